from typing import Optional

from belyi.belyi0 import Genus0BelyiMap, verify_belyi0
from belyi.catalog import CatalogEntry, genus0_function
from belyi.log_utils import Color
from belyi.reports import VerificationReport
from belyi.verifiers.base import Verifier, check_passport


class Genus0Verifier(Verifier):
    """
    Rational Belyi maps on the sphere: Riemann-Hurwitz and the passport
    """

    name = "Genus-0 Verifier"
    color = Color.BLUE
    kind = "genus0"

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> Optional[Genus0BelyiMap]:
        rational = genus0_function(entry)
        report.extend(verify_belyi0(rational, entry.name))
        if not report.passed:
            return None
        g0 = Genus0BelyiMap.create(rational)
        check_passport(report, entry, g0.passport)
        return g0
