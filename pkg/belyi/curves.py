"""
Superelliptic curves y^n = f(x) for n in {2, 3}, their function fields, Weierstrass reduction of quartics,
j-invariants and exact verification of explicit curve transformations
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from belyi.errors import CurveMismatch, DivisionByZero, InvalidInput, SingularCurve
from belyi.exactnum import FieldElement, NumberField, Scalar
from belyi.polyalg import Polynomial, RationalFunction, common_field, discriminant, poly_gcd, ratfun_compose

SUPPORTED_DEGREES = (2, 3)


@dataclass(frozen=True, eq=False)
class SuperellipticCurve:
    """
    y^n = f(x) with f squarefree. Optional factors record a factorization of f as it was written,
    which is the finest splitting of the branch locus available without factoring.
    """

    n: int
    f: Polynomial
    factors: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        if self.n not in SUPPORTED_DEGREES:
            raise InvalidInput(f"superelliptic curves are supported for n in {SUPPORTED_DEGREES}, not {self.n}")
        if self.f.degree < 1:
            raise InvalidInput("the curve polynomial must be non-constant")
        if poly_gcd(self.f, self.f.derivative()).degree > 0:
            raise SingularCurve(f"{self.f} is not squarefree")
        if self.factors and sum(g.degree for g in self.factors) != self.f.degree:
            raise InvalidInput("the recorded factors do not multiply to the curve polynomial")

    @property
    def field(self) -> NumberField:
        return self.f.field

    def change_field(self, field: NumberField) -> "SuperellipticCurve":
        if field == self.field:
            return self
        return SuperellipticCurve(self.n, self.f.change_field(field), tuple(g.change_field(field) for g in self.factors))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperellipticCurve):
            return NotImplemented
        return self.n == other.n and self.f == other.f

    def __hash__(self) -> int:
        return hash((self.n, self.f))

    def equation(self, x: str = "x", y: str = "y") -> str:
        return f"{y}^{self.n} = {self.f.to_string(x)}"

    def __str__(self) -> str:
        return self.equation()


@dataclass(frozen=True)
class BranchPoint:
    """
    The index-th root of factor, or the point at infinity when factor is None
    """

    factor: Optional[Polynomial]
    index: int = 0

    @property
    def at_infinity(self) -> bool:
        return self.factor is None

    def __str__(self) -> str:
        return "inf" if self.factor is None else f"root {self.index} of {self.factor}"


def cover_branch_points(curve: SuperellipticCurve) -> Tuple[BranchPoint, ...]:
    """
    The roots of f, plus infinity when n does not divide deg f
    """
    pieces = curve.factors or (curve.f,)
    points = [BranchPoint(g.monic(), k) for g in pieces for k in range(g.degree)]
    if curve.f.degree % curve.n:
        points.append(BranchPoint(None))
    return tuple(points)


def cover_genus(curve: SuperellipticCurve) -> int:
    """
    Riemann-Hurwitz for a cyclic cover of prime degree n, fully ramified over B points: 2g - 2 = -2n + B(n - 1)
    """
    branch = len(cover_branch_points(curve))
    return (branch - 2) * (curve.n - 1) // 2


@dataclass(frozen=True, eq=False)
class CurveFunction:
    """
    An element sum(y^i * r_i(x)) of the function field of a superelliptic curve, reduced by y^n = f(x)
    """

    curve: SuperellipticCurve
    parts: Tuple[RationalFunction, ...]

    def __post_init__(self):
        nf = self.curve.field
        parts = [p.change_field(nf) for p in self.parts]
        parts += [RationalFunction.constant(nf, 0)] * (self.curve.n - len(parts))
        if len(parts) != self.curve.n:
            raise InvalidInput("a function-field element has exactly n parts")
        object.__setattr__(self, "parts", tuple(parts))

    @classmethod
    def from_rational(cls, curve: SuperellipticCurve, r: Union[RationalFunction, Polynomial, Scalar]) -> "CurveFunction":
        if isinstance(r, Polynomial):
            r = RationalFunction.create(r)
        elif not isinstance(r, RationalFunction):
            r = RationalFunction.constant(curve.field, r)
        return cls(curve, (r,))

    @classmethod
    def x(cls, curve: SuperellipticCurve) -> "CurveFunction":
        return cls(curve, (RationalFunction.x(curve.field),))

    @classmethod
    def y(cls, curve: SuperellipticCurve) -> "CurveFunction":
        return cls(curve, (RationalFunction.constant(curve.field, 0), RationalFunction.constant(curve.field, 1)))

    @property
    def field(self) -> NumberField:
        return self.curve.field

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def is_y_free(self) -> bool:
        return all(p.is_zero() for p in self.parts[1:])

    def rational_part(self) -> RationalFunction:
        if not self.is_y_free():
            raise InvalidInput(f"{self} depends on y")
        return self.parts[0]

    def change_field(self, field: NumberField) -> "CurveFunction":
        return CurveFunction(self.curve.change_field(field), tuple(p.change_field(field) for p in self.parts))

    def _other(self, other) -> Optional["CurveFunction"]:
        if isinstance(other, CurveFunction):
            if other.curve != self.curve:
                raise CurveMismatch(f"functions on different curves: {self.curve} and {other.curve}")
            return other
        if isinstance(other, (int, Fraction, FieldElement, Polynomial, RationalFunction)) and not isinstance(other, bool):
            return CurveFunction.from_rational(self.curve, other)
        return None

    def __eq__(self, other) -> bool:
        try:
            other = self._other(other)
        except CurveMismatch:
            return False
        if other is None:
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __neg__(self) -> "CurveFunction":
        return CurveFunction(self.curve, tuple(-p for p in self.parts))

    def __add__(self, other) -> "CurveFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return CurveFunction(self.curve, tuple(a + b for a, b in zip(self.parts, other.parts)))

    __radd__ = __add__

    def __sub__(self, other) -> "CurveFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CurveFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "CurveFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        n = self.curve.n
        f = RationalFunction.create(self.curve.f)
        zero = RationalFunction.constant(self.field, 0)
        out = [zero] * n
        for i, a in enumerate(self.parts):
            if a.is_zero():
                continue
            for j, b in enumerate(other.parts):
                if b.is_zero():
                    continue
                term = a * b
                if i + j >= n:
                    term = term * f
                out[(i + j) % n] = out[(i + j) % n] + term
        return CurveFunction(self.curve, tuple(out))

    __rmul__ = __mul__

    def norm(self) -> RationalFunction:
        """
        Product of all conjugates y -> zeta * y, a rational function of x
        """
        f = RationalFunction.create(self.curve.f)
        if self.curve.n == 2:
            a, b = self.parts
            return a * a - b * b * f
        a, b, c = self.parts
        return a ** 3 + b ** 3 * f + c ** 3 * f * f - a * b * c * f * 3

    def inverse(self) -> "CurveFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero function")
        if self.is_y_free():
            return CurveFunction(self.curve, (self.parts[0].inverse(),))
        norm_inverse = self.norm().inverse()
        f = RationalFunction.create(self.curve.f)
        if self.curve.n == 2:
            a, b = self.parts
            adjugate = (a, -b)
        else:
            a, b, c = self.parts
            adjugate = (a * a - b * c * f, c * c * f - a * b, b * b - a * c)
        return CurveFunction(self.curve, tuple(p * norm_inverse for p in adjugate))

    def __truediv__(self, other) -> "CurveFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CurveFunction":
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "CurveFunction":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CurveFunction.from_rational(self.curve, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def substitute(self, x_expr: "CurveFunction", y_expr: "CurveFunction") -> "CurveFunction":
        """
        Pull this function back along x -> x_expr, y -> y_expr (both functions on another curve)
        """
        target = x_expr.curve
        total = CurveFunction.from_rational(target, 0)
        y_power = CurveFunction.from_rational(target, 1)
        for i, part in enumerate(self.parts):
            if i:
                y_power = y_power * y_expr
            if part.is_zero():
                continue
            if x_expr.is_y_free():
                pulled = CurveFunction.from_rational(target, ratfun_compose(part, x_expr.parts[0]))
            else:
                pulled = part(x_expr)
            total = total + y_power * pulled
        return total

    def to_string(self, x: str = "x", y: str = "y") -> str:
        terms = []
        for i, part in enumerate(self.parts):
            if part.is_zero():
                continue
            text = part.to_string(x)
            if i == 0:
                terms.append(text)
            else:
                power = y if i == 1 else f"{y}^{i}"
                terms.append(power if part == 1 else f"{power}*({text})")
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"CurveFunction({self} on {self.curve})"


@dataclass(frozen=True)
class WeierstrassCurve:
    """
    Y^2 = X^3 + b2 X^2 + b4 X + b6
    """

    b2: FieldElement
    b4: FieldElement
    b6: FieldElement

    @property
    def field(self) -> NumberField:
        return self.b2.field

    def cubic(self) -> Polynomial:
        return Polynomial(self.field, (self.b6, self.b4, self.b2, 1))

    def discriminant(self) -> FieldElement:
        return discriminant(self.cubic())

    def j_invariant(self) -> FieldElement:
        delta = self.discriminant()
        if delta.is_zero():
            raise SingularCurve(f"Y^2 = {self.cubic()} is singular")
        c = self.b2 * self.b2 - self.b4 * 3
        return c ** 3 * 256 / delta

    def as_superelliptic(self) -> SuperellipticCurve:
        if self.discriminant().is_zero():
            raise SingularCurve(f"Y^2 = {self.cubic()} is singular")
        return SuperellipticCurve(2, self.cubic())


@dataclass(frozen=True)
class CurveTransformation:
    """
    Substitution x = x_expr, y = y_expr expressed by functions on the target curve
    """

    source: SuperellipticCurve
    target: SuperellipticCurve
    x_expr: CurveFunction
    y_expr: CurveFunction

    @classmethod
    def identity(cls, curve: SuperellipticCurve) -> "CurveTransformation":
        return cls(curve, curve, CurveFunction.x(curve), CurveFunction.y(curve))

    def pull_back(self, value: CurveFunction) -> CurveFunction:
        if value.curve != self.source:
            raise CurveMismatch(f"function lives on {value.curve}, transformation starts at {self.source}")
        return value.substitute(self.x_expr, self.y_expr)


def verify_transformation(transformation: CurveTransformation) -> bool:
    """
    True when y_expr^n - f(x_expr) vanishes identically on the target curve
    """
    source, target = transformation.source, transformation.target
    if transformation.x_expr.curve != target or transformation.y_expr.curve != target:
        raise CurveMismatch("substitution expressions must live on the target curve")
    residual = transformation.y_expr ** source.n - source.f(transformation.x_expr)
    return residual.is_zero()


def quartic_to_weierstrass(
    a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement
) -> Tuple[WeierstrassCurve, CurveTransformation]:
    """
    Reduce y^2 = x^4 + a x^3 + b x^2 + c x + d to Y^2 = X^3 + b X^2 + (ac - 4d) X + (a^2 - 4b) d + c^2,
    keeping a point at infinity
    """
    nf = common_field(common_field(a.field, b.field), common_field(c.field, d.field))
    a, b, c, d = (nf.lift(v) for v in (a, b, c, d))
    quartic = Polynomial(nf, (d, c, b, a, 1))
    if poly_gcd(quartic, quartic.derivative()).degree > 0:
        raise SingularCurve(f"{quartic} is not squarefree")
    weierstrass = WeierstrassCurve(b, a * c - d * 4, (a * a - b * 4) * d + c * c)
    target = weierstrass.as_superelliptic()
    source = SuperellipticCurve(2, quartic)

    X = Polynomial.x(nf)
    shift = X.scale(4) + (b * 4 - a * a)
    x_const = RationalFunction.create(-(X.scale(a) + c * 2), shift)
    x_y = RationalFunction.create(Polynomial(nf, (-2,)), shift)
    # Q = aY + 3X^2 + 2bX + ac + 4d
    q_const = X * X * 3 + X.scale(b * 2) + (a * c + d * 4)
    weight = a * a - b * 4
    y_const_num = -(X ** 3).scale(4) + X.scale((a * c - d * 4) * 4) + c * c * 8 + q_const.scale(weight)
    y_y_num = Polynomial(nf, (c * 8 + weight * a,))
    square = shift * shift
    x_expr = CurveFunction(target, (x_const, x_y))
    y_expr = CurveFunction(target, (RationalFunction.create(y_const_num, square), RationalFunction.create(y_y_num, square)))
    return weierstrass, CurveTransformation(source, target, x_expr, y_expr)


def weierstrass_from_cubic(f: Polynomial) -> WeierstrassCurve:
    """
    Scale y^2 = alpha x^3 + beta x^2 + gamma x + delta to Y^2 = X^3 + beta X^2 + alpha gamma X + alpha^2 delta
    """
    if f.degree != 3:
        raise InvalidInput("expected a cubic")
    delta, gamma, beta, alpha = f.coeffs
    return WeierstrassCurve(beta, alpha * gamma, alpha * alpha * delta)


def quartic_invariants(f: Polynomial) -> Tuple[FieldElement, FieldElement]:
    """
    The invariants I, J of the binary quartic a x^4 + b x^3 + c x^2 + d x + e
    """
    e, d, c, b, a = f.coeffs
    i_inv = a * e * 12 - b * d * 3 + c * c
    j_inv = a * c * e * 72 + b * c * d * 9 - a * d * d * 27 - e * b * b * 27 - c ** 3 * 2
    return i_inv, j_inv


def j_invariant(curve: SuperellipticCurve) -> FieldElement:
    if curve.n == 3 and cover_genus(curve) == 1:
        # y -> omega y is an automorphism of order 3
        return curve.field.zero
    if curve.n != 2:
        raise InvalidInput(f"no j-invariant for the genus-{cover_genus(curve)} cover {curve}")
    f = curve.f
    if f.degree == 3:
        return weierstrass_from_cubic(f).j_invariant()
    if f.degree != 4:
        raise InvalidInput(f"j-invariant needs a cubic or quartic, got degree {f.degree}")
    if f.lc == 1:
        weierstrass, _ = quartic_to_weierstrass(f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0))
        return weierstrass.j_invariant()
    i_inv, j_inv = quartic_invariants(f)
    denominator = i_inv ** 3 * 4 - j_inv * j_inv
    if denominator.is_zero():
        raise SingularCurve(f"y^2 = {f} is singular")
    return i_inv ** 3 * 6912 / denominator


def curves_isomorphic_j(first: SuperellipticCurve, second: SuperellipticCurve) -> bool:
    """
    Equal j-invariants: isomorphic over the algebraic closure
    """
    return j_invariant(first) == j_invariant(second)
