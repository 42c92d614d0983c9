"""
Exact fibers of functions on superelliptic curves over 0, 1 and infinity, place by place.

y-free functions r(x) are handled for any n: over a root of f the n sheets merge into one place.
Functions that involve y are handled on double covers y^2 = f by writing phi - v = (A + Q y)/D and
reading orders from A, Q, D and the norm N = A^2 - Q^2 f.
"""
from typing import List, Tuple

from belyi.belyi0 import FIBER_ORDER, INF, BranchingPassport, fiber_key
from belyi.curves import CurveFunction
from belyi.errors import InvalidInput
from belyi.polyalg import Polynomial, poly_gcd, poly_lcm, split_by_orders, squarefree_decompose, squarefree_part


def _y_free_fiber(value: CurveFunction, key) -> List[int]:
    curve = value.curve
    n = curve.n
    r = value.parts[0]
    if r.is_constant():
        raise InvalidInput("a constant function has no fibers")
    if key == 0:
        target = r.num
    elif key == INF:
        target = r.den
    else:
        target = r.num - r.den
    entries: List[int] = []
    for g, k in squarefree_decompose(target).parts:
        branch = poly_gcd(g, curve.f)
        entries.extend([n * k] * branch.degree)
        entries.extend([k] * (n * (g.degree - branch.degree)))
    at_infinity = r.degree - target.degree
    if at_infinity > 0:
        if curve.f.degree % n:
            entries.append(n * at_infinity)
        else:
            entries.extend([at_infinity] * n)
    return entries


def split_parts(value: CurveFunction) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """
    Write r0 + r1 y as (P + Q y)/D with polynomials P, Q and monic D
    """
    r0, r1 = value.parts
    denominator = poly_lcm(r0.den, r1.den)
    p = r0.num * denominator.exact_div(r0.den)
    q = r1.num * denominator.exact_div(r1.den)
    return p, q, denominator


def _orders_double_cover(value: CurveFunction, shift) -> List[int]:
    """
    Orders of value - shift at every place where it is not a unit (shift None means orders of value itself)
    """
    curve = value.curve
    f = curve.f
    p, q, d = split_parts(value)
    a = p if shift is None else p - d.scale(shift)
    norm = a * a - q * q * f
    if norm.is_zero():
        raise InvalidInput(f"{value} is constant")

    orders: List[int] = []
    radical = squarefree_part(norm * d)
    tests = [q, norm, d, f] + ([a] if not a.is_zero() else [])
    for piece, found in split_by_orders([radical], tests):
        ord_q, ord_norm, ord_d, ord_f = found[:4]
        if ord_f:
            orders.extend([ord_norm - 2 * ord_d] * piece.degree)
            continue
        k = min(found[4], ord_q) if len(found) > 4 else ord_q
        for _ in range(piece.degree):
            orders.append(k - ord_d)
            orders.append(ord_norm - k - ord_d)

    m = f.degree
    if m % 2:
        orders.append(-norm.degree + 2 * d.degree)
    else:
        lead = q.degree + m // 2 if not q.is_zero() else None
        candidates = [deg for deg in (a.degree if not a.is_zero() else None, lead) if deg is not None]
        k_inf = -max(candidates)
        orders.append(k_inf + d.degree)
        orders.append(-norm.degree - k_inf + d.degree)
    return orders


def function_fiber(value: CurveFunction, fiber) -> Tuple[int, ...]:
    """
    Ramification indices of value over 0, 1 or infinity
    """
    key = fiber_key(fiber)
    if value.is_y_free():
        return tuple(sorted(_y_free_fiber(value, key), reverse=True))
    if value.curve.n != 2:
        raise InvalidInput("fibers of functions involving y are computed on double covers only")
    if key == INF:
        entries = [-o for o in _orders_double_cover(value, None) if o < 0]
    else:
        entries = [o for o in _orders_double_cover(value, key) if o > 0]
    return tuple(sorted(entries, reverse=True))


def function_passport(value: CurveFunction) -> BranchingPassport:
    return BranchingPassport(*(function_fiber(value, v) for v in FIBER_ORDER))


def function_degree(value: CurveFunction) -> int:
    return sum(function_fiber(value, INF))
