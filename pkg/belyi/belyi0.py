"""
Branching passports and the exact Belyi test for rational functions on the projective line
"""
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import List, Tuple, Union

from belyi.errors import InvalidInput, NotBelyi
from belyi.exactnum import NumberField
from belyi.polyalg import RationalFunction, squarefree_decompose
from belyi.reports import VerificationReport

INF = "inf"
FIBER_ORDER = (INF, 0, 1)

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_SUPERSCRIPT_RUN = re.compile(r"[⁰¹²³⁴⁵⁶⁷⁸⁹]+")
_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def fiber_key(value) -> Union[str, int]:
    if value in (INF, "∞", "infinity") or (isinstance(value, float) and math.isinf(value)):
        return INF
    if value in (0, 1):
        return int(value)
    raise InvalidInput(f"fibers are taken over 0, 1 or infinity, not {value!r}")


def _format_fiber(entries: Tuple[int, ...]) -> str:
    counts = Counter(entries)
    parts = []
    for e in sorted(counts, reverse=True):
        parts.append(str(e) if counts[e] == 1 else f"{e}^{counts[e]}")
    return " ".join(parts)


def _parse_fiber(text: str) -> Tuple[int, ...]:
    entries: List[int] = []
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise InvalidInput(f"bad passport entry {token!r}")
        entries.extend([int(match.group(1))] * int(match.group(2) or 1))
    if not entries:
        raise InvalidInput("empty fiber in passport")
    return tuple(entries)


@dataclass(frozen=True)
class BranchingPassport:
    """
    Ramification indices over infinity, 0 and 1 (in that order), each fiber sorted descending
    """

    fiber_inf: Tuple[int, ...]
    fiber_0: Tuple[int, ...]
    fiber_1: Tuple[int, ...]

    def __post_init__(self):
        for name in ("fiber_inf", "fiber_0", "fiber_1"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name), reverse=True)))
        sums = {sum(self.fiber_inf), sum(self.fiber_0), sum(self.fiber_1)}
        if len(sums) != 1:
            raise InvalidInput(f"fibers of a passport must have equal sums, got {self.fibers}")

    @classmethod
    def parse(cls, text: str) -> "BranchingPassport":
        """
        Accepts "3^2 6/4^3/2^6", "3 3 6/4 4 4/2 2 2 2 2 2", bracketed forms and superscript exponents
        """
        cleaned = _SUPERSCRIPT_RUN.sub(lambda m: "^" + m.group(0).translate(_SUPERSCRIPTS), text.strip().strip("[]"))
        cleaned = re.sub(r"(\d)\s*\^\s*(\d)", r"\1^\2", cleaned)
        fibers = cleaned.split("/")
        if len(fibers) != 3:
            raise InvalidInput(f"a passport has three fibers separated by '/': {text!r}")
        return cls(*(_parse_fiber(f) for f in fibers))

    @property
    def fibers(self) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
        return self.fiber_inf, self.fiber_0, self.fiber_1

    def fiber(self, value) -> Tuple[int, ...]:
        return dict(zip(FIBER_ORDER, self.fibers))[fiber_key(value)]

    @property
    def degree(self) -> int:
        return sum(self.fiber_inf)

    @property
    def ramification(self) -> int:
        return sum(e - 1 for fiber in self.fibers for e in fiber)

    def genus(self) -> int:
        """
        Genus of the source when nothing outside 0, 1, infinity is ramified
        """
        doubled = self.ramification - 2 * self.degree + 2
        if doubled % 2:
            raise InvalidInput(f"passport {self} violates the parity of Riemann-Hurwitz")
        return doubled // 2

    def repeated(self, k: int) -> "BranchingPassport":
        return BranchingPassport(self.fiber_inf * k, self.fiber_0 * k, self.fiber_1 * k)

    def __str__(self) -> str:
        return "/".join(_format_fiber(f) for f in self.fibers)


def fiber_structure(map: RationalFunction, value) -> Tuple[int, ...]:
    """
    Multiplicities of every point over value (0, 1 or infinity), the point at infinity included
    """
    if map.is_constant():
        raise InvalidInput("a constant map has no fibers")
    key = fiber_key(value)
    d = map.degree
    if key == 0:
        target = map.num
    elif key == INF:
        target = map.den
    else:
        target = map.num - map.den
    entries = squarefree_decompose(target).multiplicities()
    at_infinity = d - target.degree
    if at_infinity > 0:
        entries.append(at_infinity)
    return tuple(sorted(entries, reverse=True))


def passport(map: RationalFunction) -> BranchingPassport:
    return BranchingPassport(*(fiber_structure(map, value) for value in FIBER_ORDER))


def verify_belyi0(map: RationalFunction, name: str = "") -> VerificationReport:
    """
    Riemann-Hurwitz count on the sphere: the map is Belyi exactly when the ramification over 0, 1, infinity is 2d - 2
    """
    report = VerificationReport(entry=name or str(map), kind="genus0")
    found = passport(map)
    expected = 2 * map.degree - 2
    report.details.update(
        {"passport": str(found), "degree": map.degree, "ramification": found.ramification,
         "deficit": expected - found.ramification}
    )
    report.add(
        "belyi",
        found.ramification == expected,
        f"sum(e-1) over 0, 1, inf is {found.ramification}, Riemann-Hurwitz needs {expected}",
    )
    return report


@dataclass(frozen=True)
class Genus0BelyiMap:
    map: RationalFunction
    passport: BranchingPassport
    field: NumberField

    @classmethod
    def create(cls, map: RationalFunction) -> "Genus0BelyiMap":
        report = verify_belyi0(map)
        if not report.passed:
            raise NotBelyi(f"{map} is not a Belyi map: {report.checks[0].detail}")
        return cls(map, passport(map), map.field)

    @property
    def degree(self) -> int:
        return self.map.degree

    def change_field(self, field: NumberField) -> "Genus0BelyiMap":
        return Genus0BelyiMap(self.map.change_field(field), self.passport, field)
