from fractions import Fraction

from belyi.catalog import CatalogEntry
from belyi.errors import SchemaError
from belyi.hypergeo import (
    HpgParams,
    default_samples,
    hpg2f1,
    hpg_quarter_by_quadrature,
    hpg_sixth_by_quadrature,
    hpg_third_by_quadrature,
    verify_quintic_identity,
)
from belyi.log_utils import Color
from belyi.reports import VerificationReport
from belyi.verifiers.base import Verifier

QUADRATURE = {
    "quarter": (HpgParams(Fraction(1, 2), Fraction(1, 4), Fraction(5, 4)), hpg_quarter_by_quadrature),
    "sixth": (HpgParams(Fraction(1, 2), Fraction(1, 6), Fraction(7, 6)), hpg_sixth_by_quadrature),
    "third": (HpgParams(Fraction(1, 3), Fraction(2, 3), Fraction(4, 3)), hpg_third_by_quadrature),
}


def real_samples(count: int):
    """
    Evenly spaced points of (0, 0.75), both ends excluded
    """
    return [0.72 * (k + 1) / (count + 1) + 0.015 for k in range(count)]


class HpgVerifier(Verifier):
    """
    Numeric hypergeometric identities: the degree-5 transformation, and series against quadrature
    """

    name = "Hypergeometric Verifier"
    color = Color.RED
    kind = "hpg-identity"

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> None:
        identity = entry.payload.get("identity")
        count = int(entry.payload.get("samples", 10))
        precision = int(entry.payload.get("precision", 128))
        tolerance = float(entry.payload.get("tolerance", 1e-10))
        if identity == "quintic":
            result = verify_quintic_identity(default_samples(count), precision)
            report.details.update({"max_residual": result.max_residual, "rejected": len(result.rejected)})
            report.add("samples accepted", len(result.residuals) > 0, f"{len(result.residuals)} of {count}")
            report.add("quintic residual", result.max_residual < tolerance, f"max residual {result.max_residual:.3e}")
        elif identity in QUADRATURE:
            params, quadrature = QUADRATURE[identity]
            worst = max(
                abs(complex(hpg2f1(params.at(z), precision)) - complex(quadrature(z, precision)))
                for z in real_samples(count)
            )
            report.details["max_difference"] = worst
            report.add(f"{identity} series against quadrature", worst < tolerance, f"max difference {worst:.3e}")
        else:
            raise SchemaError(f"{entry.name}: unknown identity {identity!r}")
        return None
