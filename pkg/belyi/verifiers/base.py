import logging
import time
from typing import Optional, Union

from belyi.belyi0 import BranchingPassport, Genus0BelyiMap
from belyi.catalog import CatalogEntry
from belyi.composer import Genus1BelyiMap
from belyi.config import NumericSettings
from belyi.curves import SuperellipticCurve, j_invariant
from belyi.errors import BelyiError
from belyi.expressions import parse_scalar
from belyi.log_utils import Color, paint
from belyi.monodromy import (
    PermutationTriple,
    critical_values_numeric,
    genus_from_triple,
    is_belyi_numeric,
    permutation_triple,
)
from belyi.polyalg import common_field
from belyi.reports import VerificationReport

AnyBelyiMap = Union[Genus0BelyiMap, Genus1BelyiMap]

NUMERIC_MAX_DEGREE = 16
CRITICAL_VALUE_TOL = 1e-6


class Verifier:
    """
    An abstract superclass for the verifiers of one catalog kind
    Used to log messages in a way that identifies each verifier, and to turn exceptions into failed checks
    """

    name: str = ""
    color: Color = Color.WHITE
    kind: str = ""

    def log(self, message):
        """
        Log this as an info message, identifying the verifier
        """
        logging.info(paint(f"[{self.name}] {message}", Color.BG_BLACK, self.color))

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> Optional[AnyBelyiMap]:
        """
        Run the exact checks of this kind into report; return the Belyi map when the entry defines one
        """
        raise NotImplementedError

    def numeric(self, entry: CatalogEntry, report: VerificationReport, built: AnyBelyiMap, settings: NumericSettings) -> None:
        check_monodromy(report, built, settings)

    def run(self, entry: CatalogEntry, numeric: bool = False, settings: Optional[NumericSettings] = None) -> VerificationReport:
        """
        Verify one entry; a BelyiError becomes a failed check carrying its exit code
        """
        report = VerificationReport(entry=entry.name, kind=entry.kind)
        start = time.perf_counter()
        self.log(f"Verifying {entry.name}")
        error_code = 0
        try:
            built = self.verify(entry, report)
            if numeric and built is not None:
                self.numeric(entry, report, built, settings or NumericSettings.from_env())
        except BelyiError as exc:
            report.add(type(exc).__name__, False, str(exc))
            error_code = exc.exit_code
        report.wall_time = time.perf_counter() - start
        report.exit_code = max(error_code, 0 if report.passed else 1)
        self.log(f"Finished {entry.name}: {len(report.failures)} failed of {len(report.checks)} checks")
        return report


def check_passport(report: VerificationReport, entry: CatalogEntry, found: BranchingPassport) -> None:
    report.details["passport"] = str(found)
    report.details["degree"] = found.degree
    if "passport" in entry.expected:
        expected = BranchingPassport.parse(str(entry.expected["passport"]))
        report.add("passport", found == expected, f"computed {found}, expected {expected}")
    else:
        report.skip("passport", "no expected passport")
    if "degree" in entry.expected:
        report.add("degree", found.degree == int(entry.expected["degree"]), f"computed {found.degree}")


def check_j(report: VerificationReport, entry: CatalogEntry, curve: SuperellipticCurve, key: str = "j") -> None:
    if key not in entry.expected:
        return
    j = j_invariant(curve)
    expected = parse_scalar(entry.expected[key], entry.number_field())
    field = common_field(j.field, expected.field)
    report.details[key] = str(j)
    report.add(key.replace("_", " "), field.lift(j) == field.lift(expected), f"computed {j}, expected {expected}")


def check_monodromy(report: VerificationReport, built: AnyBelyiMap, settings: NumericSettings) -> Optional[PermutationTriple]:
    """
    Cycle types of the numeric permutation triple against the exact passport, genus, and critical values
    """
    if built.degree > NUMERIC_MAX_DEGREE:
        report.skip("monodromy", f"degree {built.degree} above {NUMERIC_MAX_DEGREE}")
        return None
    triple = permutation_triple(built, settings)
    values = critical_values_numeric(built, settings)
    expected_genus = 0 if isinstance(built, Genus0BelyiMap) else 1
    report.add("monodromy passport", triple.passport() == built.passport, f"cycle types {triple.passport()}")
    genus = genus_from_triple(triple)
    report.add("monodromy genus", genus == expected_genus, f"genus {genus} from the triple")
    report.add("critical values", is_belyi_numeric(values, CRITICAL_VALUE_TOL), f"{len(values)} critical values")
    report.details["triple"] = triple.to_cycles()
    return triple
