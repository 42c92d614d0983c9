from typing import Optional

from belyi.catalog import CatalogEntry, build_genus1
from belyi.composer import Genus1BelyiMap, verify_genus1
from belyi.config import NumericSettings
from belyi.expressions import parse_curve_function
from belyi.log_utils import Color
from belyi.monodromy import permutation_triple, triples_equivalent
from belyi.reports import VerificationReport
from belyi.verifiers.base import Verifier, check_j, check_monodromy, check_passport


class Genus1Verifier(Verifier):
    """
    Genus-1 maps of every construction: passport, Riemann-Hurwitz, curve genus and j-invariant,
    plus the numeric dessin comparison against another entry with the same passport
    """

    name = "Genus-1 Verifier"
    color = Color.GREEN

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> Optional[Genus1BelyiMap]:
        built = build_genus1(entry)
        report.details["provenance"] = built.provenance
        report.extend(verify_genus1(built.value, entry.name))
        check_passport(report, entry, built.passport)
        check_j(report, entry, built.curve)
        return built

    def numeric(self, entry: CatalogEntry, report: VerificationReport, built: Genus1BelyiMap, settings: NumericSettings) -> None:
        mine = check_monodromy(report, built, settings)
        other = entry.references.get("dessin_differs_from")
        if other is None or mine is None:
            return
        theirs = permutation_triple(build_genus1(other), settings)
        self.log(f"Comparing the dessin of {entry.name} with {other.name}")
        report.add(
            f"dessin differs from {other.name}",
            mine.passport() == theirs.passport() and not triples_equivalent(mine, theirs),
            "same passport, no simultaneous conjugation between the triples",
        )


class CoverVerifier(Genus1Verifier):
    name = "Cover Verifier"
    kind = "genus1-cover"


class CompositeVerifier(Genus1Verifier):
    name = "Isogeny Composite Verifier"
    kind = "genus1-isogeny-composite"

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> Optional[Genus1BelyiMap]:
        built = super().verify(entry, report)
        if "value" in entry.expected:
            expected = parse_curve_function(entry.expected["value"], built.curve)
            report.add("composite value", built.value == expected, f"computed {built.value}")
        return built
