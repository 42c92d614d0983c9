"""
Floating-point oracle for Belyi maps: critical values, permutation triples by continuing the fiber above a
base point around 0 and 1, the genus of a triple and isomorphism of dessins by simultaneous conjugation.

Roots that seed the computation are found with mpmath at the working precision. Path continuation runs on the
system y^n = f(x), sum(y^i P_i(x)) = t D(x), vectorised over sheets: in numpy double precision first, then on
object arrays of mpmath numbers at the working precision and at twice it when double precision cannot keep
the sheets apart.
A rational map on the line is the case n = 1, f = 1.
"""
import cmath
import logging
import math
from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from mpmath import mp

from belyi.belyi0 import INF, BranchingPassport, Genus0BelyiMap
from belyi.composer import Genus1BelyiMap
from belyi.config import NumericSettings
from belyi.curves import CurveFunction, SuperellipticCurve
from belyi.errors import InvalidInput, PrecisionError
from belyi.exactnum import NumberField, embed, working_precision
from belyi.fibers import function_degree, function_fiber, split_parts
from belyi.polyalg import Polynomial, RationalFunction, poly_gcd, poly_lcm, ratfun_compose, squarefree_part

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]
CriticalValue = Union[complex, str]
AnyMap = Union[Genus0BelyiMap, Genus1BelyiMap, RationalFunction, CurveFunction]

DOUBLE_PRECISION = 53
LOOP_RADIUS = 0.25
BASE_SHIFT = 1j / 7
# offsets from the configured base point, with loop radii
LOOP_CHOICES = ((0j, LOOP_RADIUS), (BASE_SHIFT, 0.2), (-0.5j, 0.3), (0.1 + 0.05j, 0.15))
STEP_REACH = 0.2
MIN_STEP = 1e-10
NEWTON_ITERATIONS = 12
MATCH_TOL = 1e-6
CHART_CENTERS = (Fraction(37, 101), Fraction(-53, 89), Fraction(71, 113), Fraction(-19, 127))


def compose(first: Permutation, second: Permutation) -> Permutation:
    """
    first, then second
    """
    return tuple(second[i] for i in first)


def invert(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycles(p: Permutation) -> List[Tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        i = p[start]
        while i != start:
            cycle.append(i)
            seen.add(i)
            i = p[i]
        out.append(tuple(cycle))
    return out


def cycle_type(p: Permutation) -> Tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def _cycle_notation(p: Permutation) -> str:
    moved = [c for c in cycles(p) if len(c) > 1]
    if not moved:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in moved)


@dataclass(frozen=True)
class PermutationTriple:
    """
    Monodromy of a Belyi map on 0-based sheet labels, composed left to right: sigma0 sigma1 sigma_inf = 1
    """

    sigma0: Permutation
    sigma1: Permutation
    sigma_inf: Permutation

    def __post_init__(self):
        d = len(self.sigma0)
        for name in ("sigma0", "sigma1", "sigma_inf"):
            p = tuple(getattr(self, name))
            if sorted(p) != list(range(d)):
                raise InvalidInput(f"{name} is not a permutation of {d} sheets")
            object.__setattr__(self, name, p)
        product = compose(compose(self.sigma0, self.sigma1), self.sigma_inf)
        if product != tuple(range(d)):
            raise InvalidInput("sigma0 * sigma1 * sigma_inf is not the identity")

    @classmethod
    def from_pair(cls, sigma0: Permutation, sigma1: Permutation) -> "PermutationTriple":
        return cls(tuple(sigma0), tuple(sigma1), invert(compose(tuple(sigma0), tuple(sigma1))))

    @property
    def degree(self) -> int:
        return len(self.sigma0)

    def is_transitive(self) -> bool:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.degree))
        for i in range(self.degree):
            graph.add_edge(i, self.sigma0[i])
            graph.add_edge(i, self.sigma1[i])
        return nx.is_connected(graph)

    def passport(self) -> BranchingPassport:
        return BranchingPassport(cycle_type(self.sigma_inf), cycle_type(self.sigma0), cycle_type(self.sigma1))

    def conjugate(self, pi: Permutation) -> "PermutationTriple":
        """
        The triple pi sigma pi^-1, relabelling sheet i as pi(i)
        """
        inverse = invert(pi)
        return PermutationTriple(*(compose(compose(inverse, s), pi) for s in (self.sigma0, self.sigma1, self.sigma_inf)))

    def to_cycles(self) -> Dict[str, str]:
        return {
            "sigma0": _cycle_notation(self.sigma0),
            "sigma1": _cycle_notation(self.sigma1),
            "sigma_inf": _cycle_notation(self.sigma_inf),
        }


def genus_from_triple(t: PermutationTriple) -> int:
    """
    Euler characteristic of the dessin: 2 - 2g = c(sigma0) + c(sigma1) + c(sigma_inf) - D
    """
    total = sum(len(cycles(s)) for s in (t.sigma0, t.sigma1, t.sigma_inf))
    return (2 + t.degree - total) // 2


def triples_equivalent(t1: PermutationTriple, t2: PermutationTriple) -> bool:
    """
    True when one relabelling of sheets conjugates all three permutations at once
    """
    if t1.degree != t2.degree or t1.passport() != t2.passport():
        return False
    d = t1.degree
    pairs = ((t1.sigma0, t2.sigma0), (t1.sigma1, t2.sigma1))
    for seed in range(d):
        pi: List[Optional[int]] = [None] * d
        pi[0] = seed
        stack = [0]
        consistent = True
        while stack and consistent:
            i = stack.pop()
            for s, r in pairs:
                j, k = s[i], r[pi[i]]
                if pi[j] is None:
                    pi[j] = k
                    stack.append(j)
                elif pi[j] != k:
                    consistent = False
                    break
        if consistent and None not in pi and len(set(pi)) == d:
            return True
    return False


class _Embedder:
    """
    Complex values of exact polynomials under one embedding of their field
    """

    def __init__(self, field: NumberField, settings: NumericSettings, precision: Optional[int] = None):
        self.precision = precision or settings.precision
        self.index = settings.embedding if field.degree > 1 else 0
        if self.index >= field.degree:
            raise InvalidInput(f"embedding {settings.embedding} does not exist for a field of degree {field.degree}")

    def coeffs(self, p: Polynomial) -> list:
        """
        Descending mpc coefficients
        """
        return [embed(c, self.index, self.precision) for c in reversed(p.coeffs)]

    def value(self, p: Polynomial, x):
        acc = mp.mpc(0)
        for c in self.coeffs(p):
            acc = acc * x + c
        return acc

    def roots(self, p: Polynomial) -> list:
        if p.degree < 1:
            return []
        return _mp_roots(self.coeffs(p), self.precision)


def _mp_roots(coeffs: list, precision: int) -> list:
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) < 2:
        return []
    with working_precision(precision):
        try:
            return list(mp.polyroots(coeffs, maxsteps=400, extraprec=2 * precision))
        except mp.NoConvergence as exc:
            raise PrecisionError(f"roots of a degree-{len(coeffs) - 1} polynomial did not converge; raise the precision") from exc


def _combine(terms: Sequence[Tuple[object, list]]) -> list:
    """
    sum(scale * coeffs) over descending coefficient lists of different lengths
    """
    width = max(len(c) for _, c in terms)
    out = [mp.mpc(0)] * width
    for scale, coeffs in terms:
        offset = width - len(coeffs)
        for k, c in enumerate(coeffs):
            out[offset + k] += scale * c
    return out


def _derivative(coeffs: list) -> list:
    degree = len(coeffs) - 1
    return [c * (degree - k) for k, c in enumerate(coeffs[:-1])] or [0]


def _unwrap(map: AnyMap) -> Tuple[int, Polynomial, Tuple[RationalFunction, ...], int]:
    """
    n, f, the parts r_i and the degree of any supported map
    """
    if isinstance(map, Genus0BelyiMap):
        map = map.map
    if isinstance(map, Genus1BelyiMap):
        return map.curve.n, map.curve.f, map.value.parts, map.degree
    if isinstance(map, RationalFunction):
        if map.is_constant():
            raise InvalidInput("a constant map has no monodromy")
        return 1, Polynomial.constant(map.field, 1), (map,), map.degree
    if isinstance(map, CurveFunction):
        return map.curve.n, map.curve.f, map.parts, function_degree(map)
    raise InvalidInput(f"unsupported map type {type(map).__name__}")


class _Arithmetic:
    """
    Elementwise arithmetic on arrays of sheets: numpy complex128 at double precision, numpy object arrays
    of mpmath numbers above it
    """

    def __init__(self, precision: int):
        self.precision = precision
        self.multiple = precision > DOUBLE_PRECISION
        self.tight = 2.0 ** -(precision * 3 // 4)
        self.loose = 2.0 ** -(precision // 2)

    def context(self):
        return working_precision(self.precision) if self.multiple else nullcontext()

    def array(self, values) -> np.ndarray:
        values = list(values) or [0]
        if self.multiple:
            return np.array([mp.mpc(v) for v in values], dtype=object)
        return np.array([complex(v) for v in values], dtype=complex)

    def norm(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """
        sqrt(|a|^2 + |b|^2) elementwise, as floats
        """
        return np.asarray((np.abs(a) ** 2 + np.abs(b) ** 2) ** 0.5, dtype=float)

    def finite(self, *arrays: np.ndarray) -> bool:
        if self.multiple:
            return all(mp.isfinite(v) for a in arrays for v in a)
        return all(bool(np.all(np.isfinite(a))) for a in arrays)


class _FiberModel:
    """
    The fiber equations y^n = f(x), sum(y^i P_i(x)) = t D(x), exact and in one arithmetic
    """

    def __init__(self, map: AnyMap, settings: NumericSettings, precision: int = DOUBLE_PRECISION):
        self.n, self.f_exact, parts, self.degree = _unwrap(map)
        self.settings = settings
        self.arith = _Arithmetic(precision)
        self.y_free = all(p.is_zero() for p in parts[1:])
        if not self.y_free and self.n != 2:
            raise InvalidInput("monodromy of functions involving y is computed on double covers only")
        denominator = parts[0].den
        for p in parts[1:]:
            denominator = poly_lcm(denominator, p.den)
        self.den_exact = denominator
        self.parts_exact = [p.num * denominator.exact_div(p.den) for p in parts]
        self.seed_precision = max(precision, settings.precision)
        self.embedder = _Embedder(self.f_exact.field, settings, self.seed_precision)
        e, arith = self.embedder, self.arith
        f = e.coeffs(self.f_exact)
        parts_coeffs = [e.coeffs(p) for p in self.parts_exact]
        den = e.coeffs(self.den_exact)
        with working_precision(self.seed_precision):
            self.f, self.df = arith.array(f), arith.array(_derivative(f))
            self.parts = [arith.array(c) for c in parts_coeffs]
            self.dparts = [arith.array(_derivative(c)) for c in parts_coeffs]
            self.den, self.dden = arith.array(den), arith.array(_derivative(den))

    def base_fiber(self, b: complex) -> Tuple[np.ndarray, np.ndarray]:
        """
        All degree-many points above t = b, sorted by (x, y) real then imaginary part
        """
        e = self.embedder
        precision = self.seed_precision
        with working_precision(precision):
            t = mp.mpc(b.real, b.imag)
            points = []
            if self.y_free:
                xs = _mp_roots(_combine([(1, e.coeffs(self.parts_exact[0])), (-t, e.coeffs(self.den_exact))]), precision)
                omega = mp.exp(2j * mp.pi / self.n)
                for x in xs:
                    y0 = mp.root(e.value(self.f_exact, x), self.n)
                    points.extend((x, y0 * omega ** k) for k in range(self.n))
            else:
                p, q, d, f = self.parts_exact[0], self.parts_exact[1], self.den_exact, self.f_exact
                square, cross, constant = d * d, d * p, p * p - q * q * f
                common = poly_gcd(poly_gcd(square, cross), constant)
                xs = _mp_roots(
                    _combine(
                        [
                            (t * t, e.coeffs(square.exact_div(common))),
                            (-2 * t, e.coeffs(cross.exact_div(common))),
                            (1, e.coeffs(constant.exact_div(common))),
                        ]
                    ),
                    precision,
                )
                for x in xs:
                    qx = e.value(q, x)
                    if abs(qx) == 0:
                        raise PrecisionError("base point lies over a zero of the y-coefficient")
                    points.append((x, (t * e.value(d, x) - e.value(p, x)) / qx))
            if len(points) != self.degree:
                raise PrecisionError(f"found {len(points)} points above the base point, expected {self.degree}")
            points.sort(key=lambda z: (float(z[0].real), float(z[0].imag), float(z[1].real), float(z[1].imag)))
            return self.arith.array(x for x, _ in points), self.arith.array(y for _, y in points)

    def residual(self, x: np.ndarray, y: np.ndarray, t: complex) -> Tuple[np.ndarray, np.ndarray]:
        first = y ** self.n - np.polyval(self.f, x)
        second = -t * np.polyval(self.den, x)
        for i, p in enumerate(self.parts):
            second = second + y ** i * np.polyval(p, x)
        return first, second

    def jacobian(self, x: np.ndarray, y: np.ndarray, t: complex):
        a = -np.polyval(self.df, x)
        b = self.n * y ** (self.n - 1)
        c = -t * np.polyval(self.dden, x)
        d = np.zeros_like(x)
        for i, (p, dp) in enumerate(zip(self.parts, self.dparts)):
            c = c + y ** i * np.polyval(dp, x)
            if i:
                d = d + i * y ** (i - 1) * np.polyval(p, x)
        return a, b, c, d


def _nearest(arith: _Arithmetic, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if len(x) == 1:
        return np.array([np.inf])
    dist = arith.norm(x[:, None] - x[None, :], y[:, None] - y[None, :])
    np.fill_diagonal(dist, np.inf)
    return dist.min(axis=1)


class _Tracker:
    """
    Continues every sheet of the fiber along a path of values of the map, in the model's arithmetic
    """

    def __init__(self, model: _FiberModel):
        self.model = model
        self.arith = model.arith
        self.settings = model.settings

    def _newton(self, x: np.ndarray, y: np.ndarray, t: complex):
        model, arith = self.model, self.arith
        previous = None
        for _ in range(NEWTON_ITERATIONS):
            f1, f2 = model.residual(x, y, t)
            a, b, c, d = model.jacobian(x, y, t)
            det = a * d - b * c
            if np.any(det == 0):
                return x, y, False
            dx = (b * f2 - d * f1) / det
            dy = (c * f1 - a * f2) / det
            x, y = x + dx, y + dy
            if not arith.finite(x, y):
                return x, y, False
            largest = float((arith.norm(dx, dy) / (1 + arith.norm(x, y))).max())
            if largest < arith.tight:
                return x, y, True
            if previous is not None and largest > previous / 2:
                # stopped contracting: the corrections are rounding noise
                return x, y, largest < arith.loose
            previous = largest
        return x, y, False

    def track(self, x: np.ndarray, y: np.ndarray, path: Callable[[float], complex]):
        """
        Continue every sheet along t = path(s), s from 0 to 1

        A step is kept when Newton converges and no sheet moves more than half way to its nearest neighbour.
        The next step is scaled so that sheets move about STEP_REACH of that distance, which shortens steps
        where sheets crowd together; a rejected step is halved
        """
        model, arith = self.model, self.arith
        tol = self.settings.cluster_tol
        top = 1.0 / self.settings.path_steps
        s, h = 0.0, top
        t = path(0.0)
        separation = _nearest(arith, x, y)
        if separation.min() < tol * (1 + arith.norm(x, y).max()):
            raise PrecisionError(f"two sheets coincide above t = {t:.6g}")
        while s < 1.0:
            h = min(h, 1.0 - s)
            t_next = path(s + h)
            a, b, c, d = model.jacobian(x, y, t)
            det = a * d - b * c
            if np.any(det == 0):
                raise PrecisionError(f"a sheet sits on a ramification point near t = {t:.6g}")
            den = np.polyval(model.den, x)
            dt = t_next - t
            x_guess = x - b * den / det * dt
            y_guess = y + a * den / det * dt
            x_new, y_new, ok = self._newton(x_guess, y_guess, t_next)
            if ok:
                moved = arith.norm(x_new - x, y_new - y)
                ok = bool(np.all(moved < 0.5 * separation))
            if not ok:
                h /= 2
                if h < MIN_STEP:
                    raise PrecisionError(f"path continuation stalled near t = {t_next:.6g} at {arith.precision} bits")
                continue
            gaps = _nearest(arith, x_new, y_new)
            if gaps.min() < tol * (1 + arith.norm(x_new, y_new).max()):
                raise PrecisionError(f"two sheets collide near t = {t_next:.6g}")
            reach = float((moved / separation).max())
            x, y, t, s, separation = x_new, y_new, t_next, s + h, gaps
            h = min(top, h * min(2.0, max(0.5, STEP_REACH / reach))) if reach > 0 else min(top, 2 * h)
        return x, y


def _loop_pieces(base: complex, center: complex, radius: float = LOOP_RADIUS) -> List[Callable[[float], complex]]:
    """
    Segment to the circle of the given radius around center, once counterclockwise around it, and back
    """
    offset = base - center
    start = center + radius * offset / abs(offset)
    return [
        lambda s: base + (start - base) * s,
        lambda s: center + (start - center) * cmath.exp(2j * math.pi * s),
        lambda s: start + (base - start) * s,
    ]


def _segment_distance(point: complex, a: complex, b: complex) -> float:
    direction = b - a
    s = ((point - a) * direction.conjugate()).real / abs(direction) ** 2
    return abs(point - (a + min(1.0, max(0.0, s)) * direction))


def loops_are_clear(base: complex, radius: float) -> bool:
    """
    Whether both loops from base stay well away from the other critical value
    """
    if not 0 < radius < 0.5 or min(abs(base), abs(base - 1)) <= 1.5 * radius:
        return False
    for center, other in ((0, 1), (1, 0)):
        start = center + radius * (base - center) / abs(base - center)
        if _segment_distance(other, base, start) <= radius:
            return False
    return True


def continuation_attempts(settings: NumericSettings) -> List[Tuple[int, complex, float]]:
    """
    (precision, base point, loop radius) in the order tried: every loop choice in double precision, then the
    first two at the working precision and the first at twice the working precision
    """
    choices = [(settings.base_point + offset, radius) for offset, radius in LOOP_CHOICES]
    choices = [(base, radius) for base, radius in choices if loops_are_clear(base, radius)]
    if not choices:
        raise InvalidInput(f"base point {settings.base_point} is too close to 0 or 1 for any loop radius")
    ladder = [(DOUBLE_PRECISION, choice) for choice in choices]
    if settings.precision > DOUBLE_PRECISION:
        ladder += [(settings.precision, choice) for choice in choices[:2]]
        ladder.append((2 * settings.precision, choices[0]))
    return [(precision, base, radius) for precision, (base, radius) in ladder]


def _match(arith: _Arithmetic, start: Tuple[np.ndarray, np.ndarray], end: Tuple[np.ndarray, np.ndarray]) -> Permutation:
    x0, y0 = start
    x1, y1 = end
    dist = arith.norm(x1[:, None] - x0[None, :], y1[:, None] - y0[None, :])
    scale = 1 + arith.norm(x0, y0)
    targets = dist.argmin(axis=1)
    for k, j in enumerate(targets):
        if dist[k, j] > MATCH_TOL * scale[j]:
            raise PrecisionError("a sheet did not return to the fiber above the base point")
    if len(set(targets.tolist())) != len(targets):
        raise PrecisionError("two sheets returned to the same point above the base point")
    return tuple(int(j) for j in targets)


def monodromy_at(
    map: AnyMap, settings: NumericSettings, precision: int, base: complex, radius: float = LOOP_RADIUS
) -> PermutationTriple:
    """
    One continuation run: loops of the given radius around 0 and 1 from base, tracked at precision bits
    (53 means numpy double precision)
    """
    model = _FiberModel(map, settings, precision)
    tracker = _Tracker(model)
    with model.arith.context():
        start = model.base_fiber(base)
        sigmas = []
        for center in (0, 1):
            x, y = start
            for piece in _loop_pieces(base, center, radius):
                x, y = tracker.track(x, y, piece)
            sigmas.append(_match(model.arith, start, (x, y)))
    triple = PermutationTriple.from_pair(*sigmas)
    if not triple.is_transitive():
        raise PrecisionError("computed monodromy is not transitive; sheets were mixed up during continuation")
    return triple


def permutation_triple(map: AnyMap, settings: Optional[NumericSettings] = None) -> PermutationTriple:
    """
    Monodromy of the fiber above the base point around 0 and 1; sigma_inf closes the product

    Runs continuation_attempts in order and returns the first triple that closes up
    """
    settings = settings or NumericSettings.from_env()
    failure = None
    for precision, base, radius in continuation_attempts(settings):
        try:
            return monodromy_at(map, settings, precision, base, radius)
        except PrecisionError as exc:
            logger.debug("monodromy at %s bits, base %s, radius %s failed: %s", precision, base, radius, exc)
            failure = exc
    raise PrecisionError(f"monodromy failed at every base point, loop radius and precision tried; last error: {failure}")


def _value_at(num, den, precision: int) -> CriticalValue:
    with working_precision(precision):
        if abs(den) <= mp.mpf(2) ** (-(precision // 3)) * (1 + abs(num)):
            return INF
        return complex(num / den)


def _rational_critical_values(r: RationalFunction, e: _Embedder, precision: int) -> List[CriticalValue]:
    """
    Values at the zeros of the Wronskian, plus the value at infinity when it is a critical point
    """
    wronskian = r.num.derivative() * r.den - r.num * r.den.derivative()
    values: List[CriticalValue] = []
    for x in e.roots(squarefree_part(wronskian)):
        values.append(_value_at(e.value(r.num, x), e.value(r.den, x), precision))
    if wronskian.degree < 2 * r.degree - 2:
        values.append(_value_infinity(r, e))
    return values


def _value_infinity(r: RationalFunction, e: _Embedder) -> CriticalValue:
    if r.num.degree > r.den.degree:
        return INF
    if r.num.degree < r.den.degree:
        return 0j
    return complex(embed(r.num.lc / r.den.lc, e.index, e.precision))


def _finite_chart(value: CurveFunction) -> CurveFunction:
    """
    The same function in the coordinate s with x = x0 + 1/s, on Y^2 = F(s), so every place of interest is finite
    """
    curve = value.curve
    field = curve.field
    for x0 in CHART_CENTERS:
        point = field.from_rational(x0)
        if curve.f(point).is_zero() or any(p.den(point).is_zero() for p in value.parts):
            continue
        break
    else:
        raise PrecisionError("no chart center avoids the special points of the map")
    s = RationalFunction.x(field)
    shift = RationalFunction.constant(field, x0) + s.inverse()
    m = curve.f.degree
    k = (m + 1) // 2
    pulled = ratfun_compose(RationalFunction.create(curve.f), shift)
    chart_f = pulled.num if m % 2 == 0 else pulled.num * Polynomial.x(field)
    chart = SuperellipticCurve(2, chart_f)
    x_expr = CurveFunction.from_rational(chart, shift)
    y_expr = CurveFunction(chart, (RationalFunction.constant(field, 0), RationalFunction.create(Polynomial.constant(field, 1), Polynomial.x(field) ** k)))
    return value.substitute(x_expr, y_expr)


def _double_cover_critical_values(value: CurveFunction, e: _Embedder, precision: int) -> List[CriticalValue]:
    """
    Finite critical values of r0 + r1 y on y^2 = f: off the branch points dphi = 0 reads y = -A/B with
    A = 2 r1' f + r1 f', B = 2 r0'; at a root of f the map is critical exactly when r1 vanishes there
    """
    chart = _finite_chart(value)
    f = RationalFunction.create(chart.curve.f)
    r0, r1 = chart.parts
    a_part = r1.derivative() * f * 2 + r1 * f.derivative()
    b_part = r0.derivative() * 2
    p, q, d = split_parts(chart)
    values: List[CriticalValue] = []

    def place_value(x, y) -> CriticalValue:
        return _value_at(e.value(p, x) + e.value(q, x) * y, e.value(d, x), precision)

    with working_precision(precision):
        small = mp.mpf(2) ** (-(precision // 3))
        if b_part.is_zero():
            candidates = e.roots(squarefree_part(a_part.num))
        else:
            candidates = e.roots(squarefree_part((a_part * a_part - b_part * b_part * f).num))
        for x in candidates:
            bx = e.value(b_part.num, x) / e.value(b_part.den, x) if not b_part.is_zero() else mp.mpc(0)
            if abs(bx) > small:
                ax = e.value(a_part.num, x) / e.value(a_part.den, x)
                values.append(place_value(x, -ax / bx))
                continue
            root = mp.sqrt(e.value(chart.curve.f, x))
            for y in (root, -root):
                values.append(place_value(x, y))
        branch = poly_gcd(chart.curve.f, r1.num) if not r1.is_zero() else chart.curve.f.monic()
        branch = branch.exact_div(poly_gcd(branch, d))
        for x in e.roots(branch):
            values.append(place_value(x, mp.mpc(0)))
    return values


def _cluster(values: List[CriticalValue], tol: float) -> List[CriticalValue]:
    finite = sorted((complex(v) for v in values if v != INF), key=lambda z: (z.real, z.imag))
    clusters: List[List[complex]] = []
    for z in finite:
        for cluster in clusters:
            if abs(cluster[0] - z) <= tol * max(1.0, abs(z)):
                cluster.append(z)
                break
        else:
            clusters.append([z])
    centers = [sum(c) / len(c) for c in clusters]
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            if abs(centers[i] - centers[j]) < 10 * tol * max(1.0, abs(centers[i])):
                raise PrecisionError(
                    f"critical values {centers[i]:.6g} and {centers[j]:.6g} are too close to separate; raise the precision"
                )
    out: List[CriticalValue] = sorted(centers, key=lambda z: (z.real, z.imag))
    if any(v == INF for v in values):
        out.append(INF)
    return out


def critical_values_numeric(map: AnyMap, settings: Optional[NumericSettings] = None) -> List[CriticalValue]:
    """
    Images of all ramification points, clustered; INF stands for infinity and sorts last
    """
    settings = settings or NumericSettings.from_env()
    n, f, parts, _ = _unwrap(map)
    e = _Embedder(f.field, settings)
    precision = settings.precision
    y_free = all(p.is_zero() for p in parts[1:])
    if not y_free and n != 2:
        raise InvalidInput("critical values of functions involving y are computed on double covers only")
    with working_precision(precision):
        if y_free:
            r = parts[0]
            values = _rational_critical_values(r, e, precision)
            if n > 1:
                # every branch point of the cover is a ramification point of the composite
                for x in e.roots(f):
                    values.append(_value_at(e.value(r.num, x), e.value(r.den, x), precision))
                if f.degree % n:
                    values.append(_value_infinity(r, e))
        else:
            value = map.value if isinstance(map, Genus1BelyiMap) else map
            values = _double_cover_critical_values(value, e, precision)
            if max(function_fiber(value, INF)) > 1:
                values.append(INF)
    return _cluster(values, settings.cluster_tol)


def is_belyi_numeric(values: List[CriticalValue], tol: float) -> bool:
    """
    Every critical value sits at 0, 1 or infinity within tol
    """
    return all(v == INF or min(abs(v), abs(v - 1)) <= tol for v in values)

