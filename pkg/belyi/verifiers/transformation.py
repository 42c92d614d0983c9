from belyi.catalog import CatalogEntry, build_transformation
from belyi.curves import cover_genus, curves_isomorphic_j, verify_transformation
from belyi.expressions import parse_curve_function
from belyi.log_utils import Color
from belyi.reports import VerificationReport
from belyi.verifiers.base import Verifier


class TransformationVerifier(Verifier):
    """
    Changes of model between curves: the substitution satisfies the source equation on the target,
    the j-invariants agree, and a function carried along lands on the stated expression
    """

    name = "Transformation Verifier"
    color = Color.WHITE
    kind = "transformation"

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> None:
        transformation = build_transformation(entry)
        source, target = transformation.source, transformation.target
        report.add("substitution", verify_transformation(transformation), f"{source} -> {target}")
        if source.n == target.n and cover_genus(source) == cover_genus(target) == 1:
            report.add("equal j", curves_isomorphic_j(source, target), "isomorphic curves share j")
        if "value" in entry.payload:
            value = parse_curve_function(entry.payload["value"], source)
            pulled = transformation.pull_back(value)
            report.details["pulled back"] = str(pulled)
            if "pulled" in entry.expected:
                expected = parse_curve_function(entry.expected["pulled"], target)
                report.add("pulled-back function", pulled == expected, f"computed {pulled}")
        return None
