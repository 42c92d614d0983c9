"""
Exact arithmetic over Q and over number fields Q[t]/(m(t)), with complex embeddings for numeric cross-checks.
Field elements are sympy domain elements: mpq over Q and ANP over QQ<a>.
"""
import logging
import operator
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Iterable, Sequence, Tuple, Union

from mpmath import mp
from sympy import CRootOf, Poly, Symbol
from sympy.polys.domains import QQ as RATIONALS
from sympy.polys.domains import Domain
from sympy.polys.polyerrors import NotInvertible

from belyi.errors import DivisionByZero, FieldMismatch, InvalidField, InvalidInput, PrecisionError

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction, "FieldElement"]

# mpmath keeps its precision in a process-wide context
_mp_lock = threading.RLock()

_T = Symbol("t")


@contextmanager
def working_precision(bits: int):
    """
    Hold the mpmath context at the given precision for the duration of the block
    """
    with _mp_lock:
        with mp.workprec(bits):
            yield


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """
    Read "p/q", "n" (or an int / Fraction) into a reduced Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational number: {value!r}") from exc
    raise InvalidInput(f"not a rational number: {value!r}")


def to_mpf(q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def to_native(q: Fraction):
    return RATIONALS(q.numerator, q.denominator)


def from_native(c) -> Fraction:
    return Fraction(int(RATIONALS.numer(c)), int(RATIONALS.denom(c)))


@lru_cache(maxsize=64)
def _algebraic_field(minpoly: Tuple[Fraction, ...]) -> Domain:
    """
    QQ<a> for the given ascending minimal polynomial, built from the pair (m, root) so sympy takes m as given
    """
    m = Poly([to_native(c) for c in reversed(minpoly)], _T, domain=RATIONALS)
    return RATIONALS.algebraic_field((m, CRootOf(m, 0)))


@dataclass(frozen=True)
class NumberField:
    """
    Q(a) presented as Q[t]/(m(t)) by a monic minimal polynomial, ascending coefficients.
    Degree 1 (minpoly t) is Q itself. The generator name only matters for printing and parsing.
    """

    minpoly: Tuple[Fraction, ...]
    generator: str = field(default="a", compare=False)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def domain(self) -> Domain:
        """
        The sympy domain the elements live in
        """
        if self.is_rational:
            return RATIONALS
        return _algebraic_field(self.minpoly)

    def native(self, coords: Sequence[Fraction]):
        """
        Domain element with the given ascending power-basis coordinates, reduced modulo the minimal polynomial
        """
        if self.is_rational:
            return to_native(coords[0]) if coords else RATIONALS.zero
        K = self.domain
        if len(coords) <= self.degree:
            return K.new([to_native(c) for c in reversed(coords)])
        gen = K.new([RATIONALS.one, RATIONALS.zero])
        value = K.zero
        for c in reversed(coords):
            value = value * gen + to_native(c)
        return value

    def element(self, coords: Iterable[Scalar]) -> "FieldElement":
        return FieldElement(self, self.native([parse_rational(c) for c in coords]))

    def from_rational(self, q: Union[int, Fraction, str]) -> "FieldElement":
        return FieldElement(self, self.native([parse_rational(q)]))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self.domain.zero)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.domain.one)

    @property
    def gen(self) -> "FieldElement":
        if self.is_rational:
            # the root of t is 0
            return self.zero
        return self.element([0, 1])

    def lift(self, a: "FieldElement") -> "FieldElement":
        """
        Move an element of Q (or of this field) into this field
        """
        if a.field == self:
            return a
        if a.field.is_rational:
            return FieldElement(self, self.domain.convert(a.rep, RATIONALS))
        raise FieldMismatch(f"cannot move an element of {a.field} into {self}")

    def coerce(self, value: Scalar) -> "FieldElement":
        if isinstance(value, FieldElement):
            return self.lift(value)
        return self.from_rational(value)

    def __str__(self) -> str:
        if self.is_rational:
            return "Q"
        poly = " + ".join(f"({c})*{self.generator}^{k}" for k, c in enumerate(self.minpoly) if c)
        return f"Q({self.generator}) with {poly} = 0"


def field_create(minpoly: Sequence[Union[str, int, Fraction]], generator: str = "a") -> NumberField:
    """
    Build a number field from a monic minimal polynomial given by ascending coefficients
    """
    if not minpoly or len(minpoly) < 2:
        raise InvalidField("minimal polynomial must have degree at least 1")
    try:
        coeffs = tuple(parse_rational(c) for c in minpoly)
    except InvalidInput as exc:
        raise InvalidField(str(exc)) from exc
    if coeffs[-1] != 1:
        raise InvalidField(f"minimal polynomial must be monic, leading coefficient is {coeffs[-1]}")
    if len(coeffs) == 2:
        # every degree-1 presentation is Q; store the canonical one
        return NumberField((Fraction(0), Fraction(1)), generator)
    return NumberField(coeffs, generator)


QQ = field_create([0, 1], "t")


@dataclass(frozen=True, eq=False)
class FieldElement:
    """
    An element of a number field held as a sympy domain element; coords gives the power basis 1, a, ..., a^(d-1)
    """

    field: NumberField
    rep: Any

    @cached_property
    def coords(self) -> Tuple[Fraction, ...]:
        if self.field.is_rational:
            return (from_native(self.rep),)
        values = [from_native(c) for c in reversed(self.rep.to_list())]
        return tuple(values) + (Fraction(0),) * (self.field.degree - len(values))

    def _unify(self, other) -> Tuple["FieldElement", "FieldElement"]:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self, self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return self, None
        if other.field == self.field:
            return self, other
        if other.field.is_rational:
            return self, self.field.lift(other)
        if self.field.is_rational:
            return other.field.lift(self), other
        raise FieldMismatch(f"elements live in different fields: {self.field} and {other.field}")

    def is_zero(self) -> bool:
        return not self.rep

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInput(f"{self} is not rational")
        return self.coords[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            a, b = self._unify(other)
        except FieldMismatch:
            return False
        if b is None:
            return NotImplemented
        return a.rep == b.rep

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field.minpoly, self.coords))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, -self.rep)

    def __add__(self, other) -> "FieldElement":
        a, b = self._unify(other)
        if b is None:
            return NotImplemented
        return FieldElement(a.field, a.rep + b.rep)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        a, b = self._unify(other)
        if b is None:
            return NotImplemented
        return FieldElement(a.field, a.rep - b.rep)

    def __rsub__(self, other) -> "FieldElement":
        a, b = self._unify(other)
        if b is None:
            return NotImplemented
        return FieldElement(a.field, b.rep - a.rep)

    def __mul__(self, other) -> "FieldElement":
        a, b = self._unify(other)
        if b is None:
            return NotImplemented
        return FieldElement(a.field, a.rep * b.rep)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("division by zero")
        try:
            return FieldElement(self.field, self.field.domain.one / self.rep)
        except NotInvertible as exc:
            raise DivisionByZero("zero divisor: field file invalid (minimal polynomial is reducible)") from exc

    def __truediv__(self, other) -> "FieldElement":
        a, b = self._unify(other)
        if b is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other) -> "FieldElement":
        a, b = self._unify(other)
        if b is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(self.field, self.rep ** exponent)

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coords[0])
        g = self.field.generator
        terms = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            power = "" if k == 0 else (g if k == 1 else f"{g}^{k}")
            if not power:
                terms.append(f"({c})" if c.denominator != 1 else str(c))
            elif c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                terms.append(f"({c})*{power}" if c.denominator != 1 else f"{c}*{power}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FieldElement({self})"


ARITHMETIC = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}


def elem_arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    if op not in ARITHMETIC:
        raise InvalidInput(f"unknown operation {op}")
    if a.field != b.field and not (a.field.is_rational or b.field.is_rational):
        raise FieldMismatch(f"elements live in different fields: {a.field} and {b.field}")
    return ARITHMETIC[op](a, b)


@lru_cache(maxsize=256)
def _roots(minpoly: Tuple[Fraction, ...], precision: int) -> tuple:
    with working_precision(precision):
        coeffs = [to_mpf(c) for c in reversed(minpoly)]
        try:
            found = mp.polyroots(coeffs, maxsteps=200, extraprec=2 * precision)
        except mp.NoConvergence as exc:
            raise PrecisionError(f"roots of the minimal polynomial did not converge at {precision} bits") from exc
        found = [mp.mpc(r) for r in found]
        separation = mp.mpf(2) ** (-(precision // 2))
        for i in range(len(found)):
            for j in range(i + 1, len(found)):
                if abs(found[i] - found[j]) < separation:
                    raise PrecisionError(f"cannot separate the roots of the minimal polynomial at {precision} bits")
        scale = mp.mpf(2) ** (precision // 2)
        return tuple(sorted(found, key=lambda r: (mp.nint(r.real * scale), mp.nint(r.imag * scale))))


def field_roots(nf: NumberField, precision: int) -> tuple:
    """
    Complex roots of the minimal polynomial ordered by (real, imaginary) at the working precision
    """
    return _roots(nf.minpoly, precision)


def embed(a: Union[FieldElement, int, Fraction], root_index: int = 0, precision: int = 128):
    """
    Complex value of a under the embedding that sends the generator to the root_index-th root
    """
    if not isinstance(a, FieldElement):
        a = QQ.coerce(a)
    if not 0 <= root_index < a.field.degree:
        raise InvalidInput(f"root index {root_index} out of range for a field of degree {a.field.degree}")
    with working_precision(precision):
        if a.field.is_rational:
            return mp.mpc(to_mpf(a.coords[0]))
        root = field_roots(a.field, precision)[root_index]
        value = mp.mpc(0)
        for c in reversed(a.coords):
            value = value * root + to_mpf(c)
        return value
