"""
Gauss hypergeometric function by its power series, elliptic-integral representations by quadrature,
and the numeric check of the degree-5 transformation of 2F1(1/2, 1/4; 5/4; z)
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

from mpmath import mp

from belyi.errors import InvalidParams, PrecisionError, SampleRejected
from belyi.exactnum import parse_rational, to_mpf, working_precision

logger = logging.getLogger(__name__)

SERIES_RADIUS = 0.75
MAX_TERMS = 100_000
PATH_SAMPLES = 256
QUINTIC_MULTIPLIER = 1 + 2j

Rational = Union[int, str, Fraction]


@dataclass(frozen=True)
class HpgParams:
    a: Fraction
    b: Fraction
    c: Fraction
    z: complex = 0j

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        object.__setattr__(self, "z", complex(self.z))
        if self.c <= 0 and self.c.denominator == 1:
            raise InvalidParams(f"c = {self.c} is a pole of the hypergeometric series")

    def at(self, z: complex) -> "HpgParams":
        return HpgParams(self.a, self.b, self.c, z)


def hpg2f1(p: HpgParams, precision: int = 128):
    """
    Sum of (a)_k (b)_k / ((c)_k k!) z^k, stopped once the tail is provably below 2^(-precision/2)

    Past k > |c| every later term ratio is at most |z| (k + |a|)/(k - |c|) max(1, (k + |b|)/(k + 1)),
    which does not grow with k, so the tail after term k is bounded by a geometric series
    """
    if abs(p.z) > SERIES_RADIUS:
        raise InvalidParams(f"|z| = {abs(p.z):.4g} lies outside the series disc of radius {SERIES_RADIUS}")
    with working_precision(precision):
        a, b, c = to_mpf(p.a), to_mpf(p.b), to_mpf(p.c)
        z = mp.mpc(p.z.real, p.z.imag)
        eps = mp.mpf(2) ** (-(precision // 2))
        abs_a, abs_b, abs_c, abs_z = abs(a), abs(b), abs(c), abs(z)
        total = mp.mpc(0)
        term = mp.mpc(1)
        for k in range(MAX_TERMS):
            total += term
            term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * z
            if term == 0:
                return total
            n = k + 1
            if n <= abs_c:
                continue
            bound = abs_z * (n + abs_a) / (n - abs_c) * max(1, (n + abs_b) / (n + 1))
            if bound < 1 and abs(term) / (1 - bound) < eps:
                return total + term
        raise PrecisionError(f"2F1 series did not settle after {MAX_TERMS} terms at z = {p.z}")


def cubic_tail_integral(cubic: Sequence[Rational], x0, exponent: Rational = Fraction(1, 2), precision: int = 128):
    """
    Integral of g(X)^(-e) dX from x0 to infinity for a monic cubic g (ascending coefficients) and 1/3 < e < 1

    With X = t^(-m), m = 1/(3e - 1), this is m times the integral over [0, x0^(-1/m)] of
    (1 + d2 t^m + d1 t^(2m) + d0 t^(3m))^(-e) dt, which has no singularity at t = 0
    """
    coeffs = [parse_rational(c) for c in cubic]
    if len(coeffs) != 4 or coeffs[3] != 1:
        raise InvalidParams("expected a monic cubic")
    e = parse_rational(exponent)
    if not Fraction(1, 3) < e < 1:
        raise InvalidParams(f"exponent {e} is outside (1/3, 1)")
    with working_precision(precision):
        x0 = mp.mpf(x0)
        if x0 <= 0:
            raise InvalidParams("the lower limit must be positive")
        d0, d1, d2 = (to_mpf(c) for c in coeffs[:3])
        m = to_mpf(1 / (3 * e - 1))
        power = -to_mpf(e)

        def integrand(t):
            u = t**m
            return (1 + d2 * u + d1 * u * u + d0 * u**3) ** power

        return m * mp.quad(integrand, [0, x0 ** (-1 / m)])


def elliptic_tail_integral(cubic: Sequence[Rational], x0, precision: int = 128):
    """
    Integral of dX / sqrt(g(X)) from x0 to infinity for a monic cubic g
    """
    return cubic_tail_integral(cubic, x0, Fraction(1, 2), precision)


def _positive_real(z) -> mp.mpf:
    z = complex(z)
    if z.imag != 0 or not 0 < z.real < 1:
        raise InvalidParams(f"integral representations need 0 < z < 1, got {z}")
    return mp.mpf(z.real)


def hpg_quarter_by_quadrature(z, precision: int = 128):
    """
    2F1(1/2, 1/4; 5/4; z) = z^(-1/4)/2 * integral from z^(-1/2) to infinity of dX / sqrt(X^3 - X)
    """
    with working_precision(precision):
        w = _positive_real(z)
        return w ** mp.mpf(-0.25) / 2 * elliptic_tail_integral((0, -1, 0, 1), w ** mp.mpf(-0.5), precision)


def hpg_sixth_by_quadrature(z, precision: int = 128):
    """
    2F1(1/2, 1/6; 7/6; z) = z^(-1/6)/2 * integral from z^(-1/3) to infinity of dX / sqrt(X^3 - 1)
    """
    with working_precision(precision):
        w = _positive_real(z)
        return w ** (-mp.mpf(1) / 6) / 2 * elliptic_tail_integral((-1, 0, 0, 1), w ** (-mp.mpf(1) / 3), precision)


def hpg_third_by_quadrature(z, precision: int = 128):
    """
    2F1(1/3, 2/3; 4/3; z) = z^(-1/3) * integral from z^(-1/3) to infinity of dX / (X^3 - 1)^(2/3)
    """
    with working_precision(precision):
        w = _positive_real(z)
        x0 = w ** (-mp.mpf(1) / 3)
        return x0 * cubic_tail_integral((-1, 0, 0, 1), x0, Fraction(2, 3), precision)


def quintic_argument(z):
    """
    z (z - 1 - 2i)^4 / ((1 + 2i) z - 1)^4
    """
    k = mp.mpc(QUINTIC_MULTIPLIER.real, QUINTIC_MULTIPLIER.imag)
    return z * (z - k) ** 4 / (k * z - 1) ** 4


def quintic_prefactor(z):
    k = mp.mpc(QUINTIC_MULTIPLIER.real, QUINTIC_MULTIPLIER.imag)
    return (1 - z / k) / (1 - k * z)


def _crosses_cut(z) -> bool:
    """
    Whether w(t z), t from 0 to 1, meets the branch cut [1, infinity) of the principal 2F1
    """
    previous = quintic_argument(mp.mpc(0))
    for step in range(1, PATH_SAMPLES + 1):
        current = quintic_argument(z * step / PATH_SAMPLES)
        if abs(current - 1) < mp.mpf("1e-3"):
            return True
        if previous.imag * current.imag <= 0 and previous.imag != current.imag:
            s = previous.imag / (previous.imag - current.imag)
            if previous.real + s * (current.real - previous.real) >= 1:
                return True
        previous = current
    return False


def quintic_residual(z: complex, precision: int = 128) -> float:
    """
    |2F1(1/2, 1/4; 5/4; z) - prefactor(z) * 2F1(1/2, 1/4; 5/4; w(z))| at one sample
    """
    params = HpgParams(Fraction(1, 2), Fraction(1, 4), Fraction(5, 4))
    if abs(complex(z)) > SERIES_RADIUS:
        raise SampleRejected(f"sample {z} lies outside the series disc")
    with working_precision(precision):
        zz = mp.mpc(complex(z).real, complex(z).imag)
        w = quintic_argument(zz)
        lhs = hpg2f1(params.at(complex(z)), precision)
        if abs(w) <= SERIES_RADIUS:
            rhs_value = hpg2f1(params.at(complex(w)), precision)
        else:
            if _crosses_cut(zz):
                raise SampleRejected(f"the transformed argument of {z} crosses the branch cut")
            rhs_value = mp.hyp2f1(mp.mpf(1) / 2, mp.mpf(1) / 4, mp.mpf(5) / 4, w)
        return float(abs(lhs - quintic_prefactor(zz) * rhs_value))


class IdentityCheck(NamedTuple):
    max_residual: float
    residuals: List[Tuple[complex, float]]
    rejected: List[complex]


def verify_quintic_identity(samples: Iterable[complex], precision: int = 128) -> IdentityCheck:
    """
    Residuals of the degree-5 transformation at every accepted sample; rejected samples are reported, not fatal
    """
    residuals, rejected = [], []
    for z in samples:
        try:
            residuals.append((complex(z), quintic_residual(z, precision)))
        except SampleRejected as exc:
            logger.debug("skipping sample: %s", exc)
            rejected.append(complex(z))
    worst = max((r for _, r in residuals), default=0.0)
    return IdentityCheck(worst, residuals, rejected)


def default_samples(count: int = 10) -> List[complex]:
    """
    Deterministic points on a spiral through the lower half of |z| <= 0.2, where the transformed
    argument stays off the branch cut
    """
    out = []
    for k in range(count):
        s = k / max(count - 1, 1)
        radius = 0.02 + 0.16 * s
        angle = -mp.pi / 2 + 0.8 * mp.pi * (s - 0.5)
        out.append(complex(radius * mp.cos(angle), radius * mp.sin(angle)))
    return out
