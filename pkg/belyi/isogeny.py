"""
Explicit isogenies between superelliptic curves, their exact verification, and composition with genus-1 Belyi maps
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from sympy import integer_nthroot

from belyi.composer import Genus1BelyiMap
from belyi.curves import CurveFunction, SuperellipticCurve, quartic_to_weierstrass
from belyi.errors import CurveMismatch, InvalidInput, NotBelyi
from belyi.exactnum import QQ, FieldElement, Scalar
from belyi.fibers import function_passport
from belyi.polyalg import (
    Polynomial,
    RationalFunction,
    common_field,
    is_constant_times_power,
    ratfun_compose,
)
from belyi.reports import VerificationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsogenyMap:
    """
    (x, y) -> (u(x), y R(x)) from y^n = f(x) to Y^n = g(X)
    """

    source: SuperellipticCurve
    target: SuperellipticCurve
    u: RationalFunction
    R: Optional[RationalFunction]
    degree: int

    @property
    def field(self):
        return common_field(self.source.field, self.target.field)


def verify_isogeny_full(iso: IsogenyMap, name: str = "") -> VerificationReport:
    """
    Curve identity f R^n = g(u), infinity mapped to infinity, and the stated degree
    """
    report = VerificationReport(entry=name or "isogeny", kind="isogeny")
    if iso.R is None:
        report.add("curve identity", False, "no y-component given; use the x-only check")
        return report
    if iso.source.n != iso.target.n:
        report.add("curve identity", False, f"covers of different degree {iso.source.n} and {iso.target.n}")
        return report
    field = iso.field
    f = RationalFunction.create(iso.source.f.change_field(field))
    g = RationalFunction.create(iso.target.f.change_field(field))
    u = iso.u.change_field(field)
    lhs = f * iso.R.change_field(field) ** iso.source.n
    rhs = ratfun_compose(g, u)
    report.add("curve identity", lhs == rhs, f"f*R^{iso.source.n} - g(u) = {lhs - rhs}")
    report.add(
        "infinity to infinity",
        u.num.degree > u.den.degree,
        f"deg num u = {u.num.degree}, deg den u = {u.den.degree}",
    )
    report.add("degree", u.degree == iso.degree, f"max degree of u is {u.degree}, stated {iso.degree}")
    report.details["degree"] = u.degree
    return report


def rational_nth_root(c: FieldElement, n: int) -> Optional[FieldElement]:
    """
    An n-th root of c inside Q when one exists; None when c is rational without a rational root.
    Irrational c raises InvalidInput: deciding powers in a number field needs factorization.
    """
    if not c.is_rational():
        raise InvalidInput(f"cannot decide whether {c} is an {n}-th power")
    q = c.rational()
    if q < 0 and n % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    top, top_exact = integer_nthroot(abs(q.numerator), n)
    bottom, bottom_exact = integer_nthroot(q.denominator, n)
    if not (top_exact and bottom_exact):
        return None
    return c.field.from_rational(sign * top) / bottom


class XOnlyResult(NamedTuple):
    flag: bool
    constant: Optional[FieldElement]
    R: Optional[RationalFunction]
    nth_power: Optional[bool]


def verify_isogeny_xonly(f_source: Polynomial, g_target: Polynomial, u: RationalFunction, n: int) -> XOnlyResult:
    """
    g(u)/f = c * S^n recovers the y-component up to an n-th root of c. When c is an n-th power in Q the
    returned R includes that root; otherwise R = S and the map needs a field extension.
    """
    field = common_field(common_field(f_source.field, g_target.field), u.field)
    ratio = ratfun_compose(RationalFunction.create(g_target.change_field(field)), u.change_field(field)) / RationalFunction.create(
        f_source.change_field(field)
    )
    test = is_constant_times_power(ratio, n)
    if not test.flag:
        return XOnlyResult(False, None, None, None)
    try:
        root = rational_nth_root(test.constant, n)
    except InvalidInput:
        logger.debug("constant %s is irrational; power test left undetermined", test.constant)
        return XOnlyResult(True, test.constant, test.root, None)
    if root is None:
        return XOnlyResult(True, test.constant, test.root, False)
    return XOnlyResult(True, test.constant, test.root * root, True)


def isogeny_from_xonly(source: SuperellipticCurve, target: SuperellipticCurve, u: RationalFunction, degree: int) -> IsogenyMap:
    result = verify_isogeny_xonly(source.f, target.f, u, source.n)
    if not result.flag or not result.nth_power:
        raise InvalidInput(f"x-component {u} does not lift to a y-component over {source.field}")
    return IsogenyMap(source, target, u, result.R, degree)


def compose_isogeny(base: Genus1BelyiMap, iso: IsogenyMap) -> Genus1BelyiMap:
    """
    Pull a Belyi function back along an isogeny: X -> u(x), Y -> y R(x).
    Isogenies are unramified, so the passport is the base passport repeated degree times.
    """
    field = common_field(base.field, iso.field)
    if base.curve.change_field(field) != iso.target.change_field(field):
        raise CurveMismatch(f"base map lives on {base.curve}, isogeny lands on {iso.target}")
    if iso.R is None:
        raise InvalidInput("composition needs the y-component of the isogeny")
    source = iso.source.change_field(field)
    value = base.value.change_field(field)
    x_expr = CurveFunction.from_rational(source, iso.u.change_field(field))
    y_parts = [RationalFunction.constant(field, 0)] * source.n
    y_parts[1] = iso.R.change_field(field)
    y_expr = CurveFunction(source, tuple(y_parts))
    pulled = value.substitute(x_expr, y_expr)
    passport = base.passport.repeated(iso.degree)
    if passport.ramification != 2 * passport.degree:
        raise NotBelyi(f"{passport} fails the genus-1 Riemann-Hurwitz count")
    if pulled.is_y_free() or source.n == 2:
        computed = function_passport(pulled)
        if computed != passport:
            raise NotBelyi(f"isogeny composite has fibers {computed}, expected {passport}")
    return Genus1BelyiMap(source, pulled, passport, "isogeny-composite")


def two_descent_target(a: Scalar, b: Scalar) -> Tuple[IsogenyMap, Polynomial]:
    """
    The 2-isogeny (X, Y) -> (X^2, X Y) from the quartic Y^2 = X^4 + a X^2 + b onto y^2 = x(x^2 + a x + b),
    and the Weierstrass cubic of that quartic, moved by X -> X - a so its rational 2-torsion point sits at 0
    """
    field = QQ
    for value in (a, b):
        if isinstance(value, FieldElement) and not value.field.is_rational:
            field = value.field
    a, b = field.coerce(a), field.coerce(b)
    X = Polynomial.x(field)
    quartic = SuperellipticCurve(2, X ** 4 + (X ** 2).scale(a) + b)
    cubic = SuperellipticCurve(2, X * (X * X + X.scale(a) + b))
    iso = IsogenyMap(quartic, cubic, RationalFunction.create(X * X), RationalFunction.create(X), 2)
    weierstrass, _ = quartic_to_weierstrass(field.zero, a, field.zero, b)
    return iso, weierstrass.cubic()(X - a)
