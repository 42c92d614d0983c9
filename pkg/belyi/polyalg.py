"""
Univariate polynomials and rational functions over a number field, on top of sympy's dense polynomials.
No factorization anywhere: multiplicity structure comes from gcds and squarefree decomposition.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol
from sympy.polys.polyclasses import DMP

from belyi.errors import DegenerateComposition, DivisionByZero, FieldMismatch, InvalidInput
from belyi.exactnum import QQ, FieldElement, NumberField, Scalar

X = Symbol("x")


def common_field(a: NumberField, b: NumberField) -> NumberField:
    if a == b or b.is_rational:
        return a
    if a.is_rational:
        return b
    raise FieldMismatch(f"objects live over different fields: {a} and {b}")


class Polynomial:
    """
    A sympy Poly in x over the field's domain, built from ascending coefficients.
    The zero polynomial has no coefficients and degree -1.
    """

    def __init__(self, field: NumberField, coeffs: Iterable[Scalar] = ()):
        values = [field.coerce(c).rep for c in coeffs]
        self.field = field
        self.poly = Poly.new(DMP.from_list(values[::-1], 0, field.domain), X)

    @classmethod
    def from_poly(cls, field: NumberField, poly: Poly) -> "Polynomial":
        out = cls.__new__(cls)
        out.field = field
        out.poly = poly
        return out

    @classmethod
    def x(cls, field: NumberField = QQ) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: NumberField, value: Scalar) -> "Polynomial":
        return cls(field, (value,))

    @cached_property
    def coeffs(self) -> Tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in reversed(self.poly.rep.to_list()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FieldElement:
        return FieldElement(self.field, self.poly.rep.LC())

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def is_constant(self) -> bool:
        return self.degree <= 0

    def change_field(self, field: NumberField) -> "Polynomial":
        if field == self.field:
            return self
        if not self.field.is_rational:
            raise FieldMismatch(f"cannot move a polynomial over {self.field} to {field}")
        return Polynomial.from_poly(field, Poly.new(self.poly.rep.convert(field.domain), X))

    def _other(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            nf = self.field if not isinstance(other, FieldElement) else common_field(self.field, other.field)
            return Polynomial(nf, (other,))
        return None

    def _aligned(self, other) -> Tuple["Polynomial", "Polynomial"]:
        nf = common_field(self.field, other.field)
        return self.change_field(nf), other.change_field(nf)

    def _wrap(self, poly: Poly) -> "Polynomial":
        return Polynomial.from_poly(self.field, poly)

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is None:
            return NotImplemented
        try:
            a, b = self._aligned(other)
        except FieldMismatch:
            return False
        return a.poly.rep == b.poly.rep

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Polynomial":
        return self._wrap(-self.poly)

    def __add__(self, other) -> "Polynomial":
        other = self._other(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        return a._wrap(a.poly + b.poly)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = self._other(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        return a._wrap(a.poly - b.poly)

    def __rsub__(self, other) -> "Polynomial":
        other = self._other(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        return a._wrap(b.poly - a.poly)

    def __mul__(self, other) -> "Polynomial":
        other = self._other(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        return a._wrap(a.poly * b.poly)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise InvalidInput("negative power of a polynomial")
        return self._wrap(self.poly.pow(exponent))

    def __divmod__(self, other) -> Tuple["Polynomial", "Polynomial"]:
        other = self._other(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        if b.is_zero():
            raise DivisionByZero("polynomial division by zero")
        quotient, remainder = a.poly.div(b.poly)
        return a._wrap(quotient), a._wrap(remainder)

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InvalidInput("polynomial division is not exact")
        return q

    def scale(self, c: Scalar) -> "Polynomial":
        return self * Polynomial(self.field, (c,))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self._wrap(self.poly.monic())

    def derivative(self) -> "Polynomial":
        return self._wrap(self.poly.diff())

    def __call__(self, value):
        """
        Horner evaluation at a field element, a polynomial or any ring element that accepts field scalars
        """
        if isinstance(value, Polynomial):
            return self.compose(value)
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            value = self.field.from_rational(value)
        if isinstance(value, FieldElement):
            value = common_field(self.field, value.field).lift(value)
        if not self.coeffs:
            return value * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        if len(self.coeffs) == 1:
            # keep the type of the argument for constant polynomials
            return value * 0 + acc
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        a, b = self._aligned(inner)
        return a._wrap(a.poly.compose(b.poly))

    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            text = str(c)
            if not power:
                terms.append(f"({text})" if not c.is_rational() else text)
            elif c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                coefficient = text if c.is_rational() and c.rational().denominator == 1 else f"({text})"
                terms.append(f"{coefficient}*{power}")
        return " + ".join(terms).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """
    Monic greatest common divisor
    """
    nf = common_field(f.field, g.field)
    f, g = f.change_field(nf), g.change_field(nf)
    if f.is_zero() and g.is_zero():
        raise InvalidInput("gcd of two zero polynomials")
    return f._wrap(f.poly.gcd(g.poly)).monic()


def poly_lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    return (f * g).exact_div(poly_gcd(f, g)).monic()


def squarefree_part(f: Polynomial) -> Polynomial:
    if f.is_zero():
        raise InvalidInput("squarefree part of the zero polynomial")
    return f.monic().exact_div(poly_gcd(f, f.derivative()))


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """
    constant * prod(g ** i) with monic, squarefree, pairwise coprime g
    """

    parts: Tuple[Tuple[Polynomial, int], ...]
    constant: FieldElement

    def expand(self) -> Polynomial:
        nf = self.constant.field
        result = Polynomial(nf, (self.constant,))
        for g, i in self.parts:
            result = result * g ** i
        return result

    def multiplicities(self) -> List[int]:
        """
        One entry per root (over the algebraic closure), the multiplicity of that root
        """
        out = []
        for g, i in self.parts:
            out.extend([i] * g.degree)
        return out


def squarefree_decompose(f: Polynomial) -> SquarefreeDecomposition:
    """
    sympy's sqf_list (Yun's algorithm) on the monic part; the leading coefficient is kept apart
    """
    if f.is_zero():
        raise InvalidInput("squarefree decomposition of the zero polynomial")
    monic = f.monic()
    parts = tuple((f._wrap(g).monic(), i) for g, i in monic.poly.sqf_list_include() if g.degree() > 0)
    return SquarefreeDecomposition(parts, f.lc)


def resultant(f: Polynomial, g: Polynomial) -> FieldElement:
    nf = common_field(f.field, g.field)
    f, g = f.change_field(nf), g.change_field(nf)
    if f.is_zero() or g.is_zero():
        raise InvalidInput("resultant with the zero polynomial")
    return FieldElement(nf, f.poly.rep.resultant(g.poly.rep))


def discriminant(f: Polynomial) -> FieldElement:
    d = f.degree
    if d < 1:
        raise InvalidInput("discriminant of a constant")
    if d == 1:
        return f.field.one
    return FieldElement(f.field, f.poly.rep.discriminant())


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """
    Reduced quotient num/den with monic denominator; constants live in the numerator
    """

    num: Polynomial
    den: Polynomial

    @classmethod
    def create(cls, num: Union[Polynomial, Scalar], den: Union[Polynomial, Scalar, None] = None) -> "RationalFunction":
        if not isinstance(num, Polynomial):
            nf = den.field if isinstance(den, Polynomial) else (num.field if isinstance(num, FieldElement) else QQ)
            num = Polynomial(nf, (num,))
        if den is None:
            den = Polynomial(num.field, (1,))
        elif not isinstance(den, Polynomial):
            den = Polynomial(num.field, (den,))
        nf = common_field(num.field, den.field)
        num, den = num.change_field(nf), den.change_field(nf)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            return cls(num, Polynomial(nf, (1,)))
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lead = den.lc.inverse()
        return cls(num.scale(lead), den.scale(lead))

    @classmethod
    def x(cls, field: NumberField = QQ) -> "RationalFunction":
        return cls(Polynomial.x(field), Polynomial(field, (1,)))

    @classmethod
    def constant(cls, field: NumberField, value: Scalar) -> "RationalFunction":
        return cls.create(Polynomial(field, (value,)))

    @property
    def field(self) -> NumberField:
        return self.num.field

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def change_field(self, field: NumberField) -> "RationalFunction":
        return RationalFunction(self.num.change_field(field), self.den.change_field(field))

    def _other(self, other) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.create(other)
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            nf = self.field if not isinstance(other, FieldElement) else common_field(self.field, other.field)
            return RationalFunction.create(Polynomial(nf, (other,)))
        return None

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction.create(self.num + other.num, self.den)
        return RationalFunction.create(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RationalFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return RationalFunction.create(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RationalFunction.create(self.den, self.num)

    def __truediv__(self, other) -> "RationalFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFunction(self.num ** exponent, self.den ** exponent)

    def derivative(self) -> "RationalFunction":
        return RationalFunction.create(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, value):
        """
        Evaluate at a field element, or substitute any ring element that supports division
        """
        if isinstance(value, (int, Fraction, FieldElement)) and not isinstance(value, bool):
            denominator = self.den(value)
            if denominator.is_zero():
                raise DivisionByZero(f"{self} has a pole at {value}")
            return self.num(value) / denominator
        if isinstance(value, RationalFunction):
            return ratfun_compose(self, value)
        return self.num(value) / self.den(value)

    def to_string(self, var: str = "x") -> str:
        if self.den.degree == 0:
            return self.num.to_string(var)
        return f"({self.num.to_string(var)})/({self.den.to_string(var)})"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def ratfun_compose(outer: RationalFunction, inner: RationalFunction) -> RationalFunction:
    """
    outer(inner(x)), homogenised so no intermediate rational function arithmetic is needed
    """
    nf = common_field(outer.field, inner.field)
    outer, inner = outer.change_field(nf), inner.change_field(nf)
    m = outer.degree
    a, b = inner.num, inner.den
    powers_a = [Polynomial(nf, (1,))]
    powers_b = [Polynomial(nf, (1,))]
    for _ in range(m):
        powers_a.append(powers_a[-1] * a)
        powers_b.append(powers_b[-1] * b)

    def homogenise(p: Polynomial) -> Polynomial:
        total = Polynomial(nf, ())
        for k, c in enumerate(p.coeffs):
            if not c.is_zero():
                total = total + (powers_a[k] * powers_b[m - k]).scale(c)
        return total

    numerator = homogenise(outer.num)
    denominator = homogenise(outer.den)
    if denominator.is_zero():
        raise DegenerateComposition(f"{outer} is infinite identically after substituting {inner}")
    return RationalFunction.create(numerator, denominator)


class PowerTest(NamedTuple):
    flag: bool
    constant: Optional[FieldElement]
    root: Optional[RationalFunction]


def is_constant_times_power(r: RationalFunction, n: int) -> PowerTest:
    """
    Decide whether r = c * S^n with S canonical (monic numerator and denominator)
    """
    if r.is_zero():
        raise InvalidInput("power test of the zero rational function")
    nf = r.field
    top = squarefree_decompose(r.num)
    bottom = squarefree_decompose(r.den)
    if any(i % n for _, i in top.parts) or any(i % n for _, i in bottom.parts):
        return PowerTest(False, None, None)
    numerator = Polynomial(nf, (1,))
    for g, i in top.parts:
        numerator = numerator * g ** (i // n)
    denominator = Polynomial(nf, (1,))
    for g, i in bottom.parts:
        denominator = denominator * g ** (i // n)
    return PowerTest(True, top.constant, RationalFunction.create(numerator, denominator))


def is_constant_times_square(r: RationalFunction) -> PowerTest:
    return is_constant_times_power(r, 2)


def order_split(piece: Polynomial, test: Polynomial) -> List[Tuple[Polynomial, int]]:
    """
    Split a squarefree polynomial into pieces on whose roots the test polynomial vanishes to a constant order
    """
    if test.is_zero():
        raise InvalidInput("order against the zero polynomial is unbounded")
    out = []
    current = piece.monic()
    remaining = test
    order = 0
    while current.degree > 0:
        g = poly_gcd(current, remaining)
        rest = current.exact_div(g)
        if rest.degree > 0:
            out.append((rest.monic(), order))
        if g.degree <= 0:
            break
        current = g
        remaining = remaining.exact_div(g)
        order += 1
    return out


def split_by_orders(
    pieces: Iterable[Polynomial], tests: Sequence[Polynomial]
) -> List[Tuple[Polynomial, Tuple[int, ...]]]:
    """
    Refine squarefree pieces until every test polynomial has a constant order of vanishing on each piece
    """
    refined: List[Tuple[Polynomial, Tuple[int, ...]]] = [(p.monic(), ()) for p in pieces if p.degree > 0]
    for test in tests:
        next_round = []
        for piece, orders in refined:
            for part, k in order_split(piece, test):
                next_round.append((part, orders + (k,)))
        refined = next_round
    return refined
