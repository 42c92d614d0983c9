"""
Genus-1 Belyi maps built from genus-0 ones: pull-back along a superelliptic cover, the lifting rule for
passports, and the parametric degree-3 coverings of a cubic.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from belyi.belyi0 import FIBER_ORDER, INF, BranchingPassport, Genus0BelyiMap
from belyi.curves import CurveFunction, SuperellipticCurve, cover_branch_points, cover_genus
from belyi.errors import DegenerateCover, InvalidInput, NotBelyi, WrongGenus
from belyi.exactnum import QQ, FieldElement, Scalar
from belyi.fibers import function_fiber, function_passport
from belyi.polyalg import Polynomial, RationalFunction, common_field, order_split, poly_gcd
from belyi.reports import VerificationReport

logger = logging.getLogger(__name__)

PROVENANCES = ("cover-composite", "isogeny-composite", "explicit")
REQUIRED_MARKS = {2: 4, 3: 3}


@dataclass(frozen=True)
class Genus1BelyiMap:
    """
    A Belyi function on a genus-1 superelliptic curve, with its verified passport and how it was obtained
    """

    curve: SuperellipticCurve
    value: CurveFunction
    passport: BranchingPassport
    provenance: str = "explicit"

    @property
    def degree(self) -> int:
        return self.passport.degree

    @property
    def field(self):
        return self.curve.field


@dataclass(frozen=True)
class CoverSpec:
    n: int
    f: Polynomial
    factors: Tuple[Polynomial, ...] = ()

    def curve(self) -> SuperellipticCurve:
        return SuperellipticCurve(self.n, self.f, self.factors)


@dataclass(frozen=True)
class FiberMarks:
    """
    Entries of a genus-0 passport sitting under branch points of the cover, per fiber
    """

    fiber_inf: Tuple[int, ...] = ()
    fiber_0: Tuple[int, ...] = ()
    fiber_1: Tuple[int, ...] = ()

    @classmethod
    def from_dict(cls, marks: Dict) -> "FiberMarks":
        return cls(tuple(marks.get(INF, ())), tuple(marks.get(0, ())), tuple(marks.get(1, ())))

    @property
    def fibers(self) -> Tuple[Tuple[int, ...], ...]:
        return self.fiber_inf, self.fiber_0, self.fiber_1

    @property
    def count(self) -> int:
        return sum(len(f) for f in self.fibers)


def predict_passport(passport0: BranchingPassport, n: int, marked: FiberMarks) -> BranchingPassport:
    """
    A marked point of index e lifts to one point of index n*e; an unmarked one to n points of index e
    """
    required = REQUIRED_MARKS.get(n)
    if required is None:
        raise InvalidInput(f"covers of degree {n} are not supported")
    if marked.count != required:
        raise WrongGenus(f"a genus-1 cover of degree {n} needs {required} branch points, got {marked.count}")
    fibers = []
    for entries, marks in zip(passport0.fibers, marked.fibers):
        remaining = Counter(entries)
        lifted: List[int] = []
        for e in marks:
            if remaining[e] <= 0:
                raise InvalidInput(f"marked entry {e} is not available in fiber {entries}")
            remaining[e] -= 1
            lifted.append(n * e)
        for e, count in remaining.items():
            lifted.extend([e] * (n * count))
        fibers.append(tuple(lifted))
    return BranchingPassport(*fibers)


def fiber_polynomials(map: RationalFunction) -> Dict:
    return {INF: map.den, 0: map.num, 1: map.num - map.den}


def cover_marks(g0: Genus0BelyiMap, curve: SuperellipticCurve) -> FiberMarks:
    """
    Locate every branch point of the cover inside the fibers of g0 by gcds; raise NotBelyi if one escapes
    """
    rational = g0.map.change_field(common_field(g0.field, curve.field))
    targets = fiber_polynomials(rational)
    marks: Dict = {key: [] for key in FIBER_ORDER}
    for point in cover_branch_points(curve):
        if point.index:
            continue
        if point.at_infinity:
            for key in FIBER_ORDER:
                at_infinity = rational.degree - targets[key].degree
                if at_infinity > 0:
                    marks[key].append(at_infinity)
                    break
            else:
                raise NotBelyi("the branch point at infinity does not lie over 0, 1 or infinity")
            continue
        found = 0
        for key in FIBER_ORDER:
            common = poly_gcd(point.factor, targets[key])
            if common.degree <= 0:
                continue
            for piece, order in order_split(common, targets[key]):
                marks[key].extend([order] * piece.degree)
                found += piece.degree
        if found != point.factor.degree:
            raise NotBelyi(f"{point.factor.degree - found} roots of {point.factor} lie outside the fibers over 0, 1, infinity")
    return FiberMarks.from_dict(marks)


def compose_with_cover(g0: Genus0BelyiMap, cover: CoverSpec) -> Genus1BelyiMap:
    """
    The genus-0 map read as a function on y^n = f(x)
    """
    curve = cover.curve().change_field(common_field(g0.field, cover.f.field))
    genus = cover_genus(curve)
    if genus != 1:
        raise WrongGenus(f"the cover {curve} has genus {genus}")
    marks = cover_marks(g0, curve)
    predicted = predict_passport(g0.passport, curve.n, marks)
    value = CurveFunction.from_rational(curve, g0.map.change_field(curve.field))
    computed = function_passport(value)
    if computed != predicted:
        raise NotBelyi(f"lifting rule predicts {predicted} but the fibers give {computed}")
    if predicted.ramification != 2 * predicted.degree:
        raise WrongGenus(f"{predicted} does not satisfy Riemann-Hurwitz for genus 1")
    logger.debug("composed %s with %s: %s", g0.map, curve, predicted)
    return Genus1BelyiMap(curve, value, predicted, "cover-composite")


def verify_genus1(value: CurveFunction, name: str = "") -> VerificationReport:
    """
    Exact passport of a function on a genus-1 curve and the Riemann-Hurwitz count sum(e-1) = 2D
    """
    report = VerificationReport(entry=name or str(value), kind="genus1")
    found = function_passport(value)
    report.details.update({"passport": str(found), "degree": found.degree})
    report.add(
        "riemann-hurwitz",
        found.ramification == 2 * found.degree,
        f"sum(e-1) = {found.ramification}, genus 1 needs {2 * found.degree}",
    )
    genus = cover_genus(value.curve)
    report.add("curve genus", genus == 1, f"cover genus {genus}")
    return report


def explicit_map(value: CurveFunction) -> Genus1BelyiMap:
    report = verify_genus1(value)
    if not report.passed:
        raise NotBelyi(f"{value} is not a genus-1 Belyi map: {'; '.join(c.detail for c in report.failures)}")
    return Genus1BelyiMap(value.curve, value, function_passport(value), "explicit")


def make_psi1(u: Scalar, field=None) -> Tuple[SuperellipticCurve, CurveFunction]:
    """
    Psi_1 = Y + X + u on Y^2 = X^3 + (X + u)^2
    """
    if field is None:
        field = u.field if isinstance(u, FieldElement) else QQ
    u = field.coerce(u)
    X = Polynomial.x(field)
    curve = SuperellipticCurve(2, X ** 3 + (X + u) ** 2)
    value = CurveFunction.y(curve) + CurveFunction.x(curve) + u
    return curve, value


def make_psi2(a: FieldElement, b_sqrt: FieldElement) -> Tuple[SuperellipticCurve, CurveFunction]:
    """
    Psi_2 = (Y + 3X + s)/2 on Y^2 = 16 X^3/(A + 2s) + (3X + s)^2 with s^2 = B;
    its critical values are infinity, 0 and the roots of v^2 + A v + B
    """
    field = common_field(a.field, b_sqrt.field)
    a, s = field.lift(a), field.lift(b_sqrt)
    denominator = a + s * 2
    if denominator.is_zero():
        raise DegenerateCover("A + 2*sqrt(B) vanishes: v^2 + A v + B has a double root")
    X = Polynomial.x(field)
    curve = SuperellipticCurve(2, (X ** 3).scale(denominator.inverse() * 16) + (X.scale(3) + s) ** 2)
    value = (CurveFunction.y(curve) + CurveFunction.x(curve) * 3 + s) / 2
    return curve, value


def verify_cubic_covering(value: CurveFunction, quadratic: Polynomial, name: str = "") -> VerificationReport:
    """
    A degree-3 function totally ramified over infinity and 0 whose remaining branch points are simple
    and lie over the roots of quadratic (which must have distinct roots)
    """
    report = VerificationReport(entry=name or str(value), kind="cubic-covering")
    report.add("fiber over infinity", function_fiber(value, INF) == (3,), f"{function_fiber(value, INF)}")
    report.add("fiber over 0", function_fiber(value, 0) == (3,), f"{function_fiber(value, 0)}")
    composite = quadratic(value)
    over_roots = function_fiber(composite, 0)
    report.add(
        "branch fibers over the quadratic",
        over_roots == (2, 2, 1, 1),
        f"zeros of the quadratic in the map have orders {over_roots}",
    )
    return report


def psi2_quadratic(a: FieldElement, b: FieldElement) -> Polynomial:
    field = common_field(a.field, b.field)
    return Polynomial(field, (b, a, 1))


def psi1_quadratic(u: FieldElement) -> Polynomial:
    """
    (v - 2u)^2 + 32 v / 27
    """
    v = Polynomial.x(u.field)
    return (v - u * 2) ** 2 + v.scale(u.field.from_rational("32/27"))


def compose_outer(outer: Genus0BelyiMap, inner: CurveFunction) -> CurveFunction:
    """
    outer(inner) in the function field, by Horner in the numerator and denominator
    """
    field = common_field(outer.field, inner.field)
    return outer.map.change_field(field)(inner.change_field(field))
