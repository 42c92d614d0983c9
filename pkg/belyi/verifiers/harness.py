import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import pandas as pd
from tqdm import tqdm

from belyi.catalog import CatalogEntry, load_entry
from belyi.config import NumericSettings, workers
from belyi.errors import BelyiError, MissingDependency, SchemaError
from belyi.log_utils import Color, init_logging, paint
from belyi.reports import VerificationReport
from belyi.verifiers import verifier_for

Filter = Tuple[str, str]


def parse_filters(texts: Sequence[str]) -> List[Filter]:
    filters = []
    for text in texts:
        key, sep, value = text.partition("=")
        if not sep or not key:
            raise SchemaError(f"filter {text!r} is not of the form key=value")
        filters.append((key.strip(), value.strip()))
    return filters


class CatalogRunner:
    """
    Loads every entry of a catalog directory, verifies the selected ones concurrently,
    and returns the reports ordered by entry name
    """

    def __init__(self, directory: Union[str, Path], numeric: bool = False, settings: Optional[NumericSettings] = None):
        init_logging()
        self.directory = Path(directory)
        self.numeric = numeric
        self.settings = settings or NumericSettings.from_env()

    def log(self, message: str):
        text = paint("[Catalog Runner] " + message, Color.BG_BLUE, Color.WHITE)
        logging.info(text)

    def load(self) -> Tuple[List[CatalogEntry], List[VerificationReport]]:
        """
        Entries that load, and a failed report for every file that does not
        """
        if not self.directory.is_dir():
            raise MissingDependency(f"catalog directory {self.directory} does not exist")
        entries, broken = [], []
        for path in sorted(self.directory.glob("*.json")):
            try:
                entries.append(load_entry(path))
            except BelyiError as exc:
                report = VerificationReport(entry=path.stem, kind="unknown", exit_code=exc.exit_code)
                report.add(type(exc).__name__, False, str(exc))
                broken.append(report)
        return entries, broken

    def verify(self, entry: CatalogEntry) -> VerificationReport:
        try:
            verifier = verifier_for(entry.kind)
        except BelyiError as exc:
            report = VerificationReport(entry=entry.name, kind=entry.kind, exit_code=exc.exit_code)
            report.add(type(exc).__name__, False, str(exc))
            return report
        return verifier.run(entry, self.numeric, self.settings)

    def run(self, filters: Sequence[Filter] = ()) -> List[VerificationReport]:
        entries, reports = self.load()
        selected = [e for e in entries if all(e.matches(key, value) for key, value in filters)]
        if filters:
            reports = []
        self.log(f"Verifying {len(selected)} of {len(entries)} entries in {self.directory}")
        with ThreadPoolExecutor(max_workers=workers()) as executor:
            futures = [executor.submit(self.verify, entry) for entry in selected]
            for future in tqdm(as_completed(futures), total=len(futures), disable=not futures):
                reports.append(future.result())
        reports.sort(key=lambda report: report.entry)
        failed = sum(1 for report in reports if not report.passed)
        self.log(f"Catalog run complete: {len(reports) - failed} passed, {failed} failed")
        return reports


def run_catalog(
    directory: Union[str, Path],
    filters: Sequence[Filter] = (),
    numeric: bool = False,
    settings: Optional[NumericSettings] = None,
) -> List[VerificationReport]:
    return CatalogRunner(directory, numeric, settings).run(filters)


def summary(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    """
    One row per entry: checks passed, failed and skipped, seconds and exit code
    """
    rows = [
        {
            "entry": report.entry,
            "kind": report.kind,
            "passed": sum(c.status == "pass" for c in report.checks),
            "failed": sum(c.status == "fail" for c in report.checks),
            "skipped": sum(c.status == "skipped" for c in report.checks),
            "seconds": round(report.wall_time, 3),
            "exit": report.exit_code,
        }
        for report in reports
    ]
    return pd.DataFrame(rows, columns=["entry", "kind", "passed", "failed", "skipped", "seconds", "exit"])


def exit_code(reports: Sequence[VerificationReport]) -> int:
    return max((report.exit_code for report in reports), default=0)
