from typing import Optional

from belyi.catalog import CatalogEntry, build_model_transformation
from belyi.composer import (
    Genus1BelyiMap,
    make_psi1,
    make_psi2,
    psi1_quadratic,
    psi2_quadratic,
    verify_cubic_covering,
)
from belyi.curves import verify_transformation
from belyi.expressions import parse_scalar
from belyi.fibers import function_passport
from belyi.log_utils import Color
from belyi.reports import VerificationReport
from belyi.verifiers.cover import Genus1Verifier


class ExplicitVerifier(Genus1Verifier):
    """
    Explicit genus-1 maps, including the degree-3 coverings of a cubic and their composites:
    the branch structure of the covering, and the same map carried to another model of its curve
    """

    name = "Explicit Map Verifier"
    color = Color.MAGENTA
    kind = "genus1-explicit"

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> Optional[Genus1BelyiMap]:
        self._check_covering(entry, report)
        built = super().verify(entry, report)
        if "model" in entry.payload:
            transformation = build_model_transformation(entry, built.curve)
            report.add("model transformation", verify_transformation(transformation), str(transformation.target))
            moved = function_passport(transformation.pull_back(built.value.change_field(transformation.source.field)))
            report.add("passport on the model", moved == built.passport, f"{moved} on {transformation.target}")
        return built

    def _check_covering(self, entry: CatalogEntry, report: VerificationReport) -> None:
        field = entry.number_field()
        if "psi2" in entry.payload:
            spec = entry.payload["psi2"]
            a, s = parse_scalar(spec["A"], field), parse_scalar(spec["B_sqrt"], field)
            _, inner = make_psi2(a, s)
            report.extend(verify_cubic_covering(inner, psi2_quadratic(a, s * s), entry.name), prefix="covering: ")
        elif "psi1" in entry.payload:
            u = parse_scalar(entry.payload["psi1"]["u"], field)
            _, inner = make_psi1(u, field)
            report.extend(verify_cubic_covering(inner, psi1_quadratic(u), entry.name), prefix="covering: ")
