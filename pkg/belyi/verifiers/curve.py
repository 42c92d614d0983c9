from typing import Optional

from belyi.catalog import CatalogEntry, build_curve, weierstrass_model
from belyi.curves import cover_genus, curves_isomorphic_j, quartic_to_weierstrass, verify_transformation
from belyi.log_utils import Color
from belyi.reports import VerificationReport
from belyi.verifiers.base import Verifier, check_j


class CurveVerifier(Verifier):
    """
    Genus and j-invariant of a curve, the Weierstrass reduction of monic quartics,
    and j-equality with the curves it is claimed isomorphic to
    """

    name = "Curve Verifier"
    color = Color.CYAN
    kind = "curve"

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> None:
        curve = build_curve(entry)
        genus = cover_genus(curve)
        report.details["genus"] = genus
        report.add("genus", genus == int(entry.expected.get("genus", 1)), f"cover genus {genus}")
        if "weierstrass" in entry.payload:
            report.details["discriminant"] = str(weierstrass_model(entry).discriminant())
        check_j(report, entry, curve)
        f = curve.f
        if curve.n == 2 and f.degree == 4 and f.lc == 1:
            _, transformation = quartic_to_weierstrass(f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0))
            report.add("weierstrass reduction", verify_transformation(transformation), str(transformation.target))
        other = entry.references.get("isomorphic_to")
        if other is not None:
            report.add(
                f"isomorphic to {other.name}",
                curves_isomorphic_j(curve, build_curve(other)),
                "equal j-invariants",
            )
        return None
