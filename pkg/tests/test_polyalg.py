from fractions import Fraction

import pytest
import sympy

from belyi.errors import DegenerateComposition, DivisionByZero, FieldMismatch, InvalidInput
from belyi.exactnum import QQ
from belyi.polyalg import (
    Polynomial,
    RationalFunction,
    common_field,
    discriminant,
    is_constant_times_power,
    is_constant_times_square,
    order_split,
    poly_gcd,
    ratfun_compose,
    resultant,
    split_by_orders,
    squarefree_decompose,
    squarefree_part,
)

X = sympy.Symbol("x")


def to_sympy(p: Polynomial) -> sympy.Poly:
    return sympy.Poly([sympy.Rational(c.rational().numerator, c.rational().denominator) for c in reversed(p.coeffs)], X)


@pytest.mark.parametrize(
    "f, g",
    [
        ("(x-1)^3*(x+2)*(x^2+1)", "(x-1)*(x^2+1)^2*(x-5)"),
        ("x^6-1", "x^4-1"),
        ("3*x^5+2*x+7", "x^2+1"),
        ("(2*x+1)^2*(3*x-2)", "(6*x^2+x-2)*(x+4)"),
    ],
)
def test_gcd_matches_sympy(poly, f, g):
    ours = poly_gcd(poly(f), poly(g))
    theirs = sympy.gcd(to_sympy(poly(f)), to_sympy(poly(g))).monic()
    assert sympy.expand(to_sympy(ours).as_expr() - theirs.as_expr()) == 0


@pytest.mark.parametrize("f", ["x^3+6*x^2-3*x", "(x+1)*(x-1)*(x-2)", "x^4-18*x^3+90*x^2-18*x+1", "5*x^3-2*x+9"])
def test_discriminant_and_resultant_match_sympy(poly, f):
    p = poly(f)
    assert discriminant(p).rational() == Fraction(str(sympy.discriminant(to_sympy(p))))
    q = poly("x^2-3*x+7")
    assert resultant(p, q).rational() == Fraction(str(sympy.resultant(to_sympy(p), to_sympy(q))))


def test_gcd_over_number_field(poly, sqrt2):
    r = sqrt2.gen
    f = poly("(x-r)^2*(x+1)", sqrt2)
    g = poly("x^2-2", sqrt2)
    assert poly_gcd(f, g) == Polynomial(sqrt2, (-r, 1))


def test_gcd_of_zeros_is_rejected():
    zero = Polynomial(QQ, ())
    with pytest.raises(InvalidInput):
        poly_gcd(zero, zero)


def test_squarefree_decomposition(poly):
    f = poly("7*(x-1)^3*(x+2)^3*(x^2+1)*(x-4)^2")
    decomposition = squarefree_decompose(f)
    assert decomposition.expand() == f
    assert decomposition.constant == 7
    assert dict((i, g) for g, i in decomposition.parts) == {
        1: poly("x^2+1"),
        2: poly("x-4"),
        3: poly("(x-1)*(x+2)"),
    }
    assert sorted(decomposition.multiplicities()) == [1, 1, 2, 3, 3]
    assert squarefree_part(f) == poly("(x-1)*(x+2)*(x^2+1)*(x-4)")


def test_squarefree_decomposition_over_number_field(poly, sqrt3):
    f = poly("(x^2-3)^2*(x-r)", sqrt3)
    assert dict((i, g) for g, i in squarefree_decompose(f).parts) == {
        2: poly("x+r", sqrt3),
        3: poly("x-r", sqrt3),
    }


def test_rational_function_normal_form(poly):
    r = RationalFunction.create(poly("2*(x-1)*(x+1)"), poly("4*(x-1)*x"))
    assert r.num == poly("(x+1)/2")
    assert r.den == poly("x")
    assert r.den.lc == 1
    with pytest.raises(DivisionByZero):
        RationalFunction.create(poly("x"), Polynomial(QQ, ()))


def test_rational_function_arithmetic(ratfun):
    a = ratfun("(x+1)/(x-1)")
    b = ratfun("(x-1)/(x+1)")
    assert a * b == 1
    assert a - a == 0
    assert a + b == ratfun("2*(x^2+1)/(x^2-1)")
    assert a.derivative() == ratfun("-2/(x-1)^2")
    assert a(3) == 2
    with pytest.raises(DivisionByZero):
        a(1)


def test_compose(ratfun, phi1):
    assert ratfun_compose(ratfun("x^2"), ratfun("(x^2+1)/(2*x)")) == ratfun("(x^2+1)^2/(4*x^2)")
    assert phi1(ratfun("1/x")) == ratfun("(x^3+1)^2/(4*x^3)")
    assert ratfun_compose(phi1, ratfun("x")) == phi1


def test_compose_degenerate(ratfun):
    with pytest.raises(DegenerateComposition):
        ratfun_compose(ratfun("1/x"), ratfun("0"))


def test_common_field(sqrt2, sqrt3):
    assert common_field(QQ, sqrt2) == sqrt2
    assert common_field(sqrt2, QQ) == sqrt2
    with pytest.raises(FieldMismatch):
        common_field(sqrt2, sqrt3)


def test_constant_times_square(ratfun):
    test = is_constant_times_square(ratfun("9*(x^2+1)^2/(4*x^4)"))
    assert test.flag
    assert test.constant == Fraction(9, 4)
    assert test.root == ratfun("(x^2+1)/x^2")
    assert not is_constant_times_square(ratfun("(x^2+1)/x^2")).flag


def test_constant_times_cube(ratfun):
    test = is_constant_times_power(ratfun("-2*(x-1)^3*(x+5)^6/x^3"), 3)
    assert test.flag and test.constant == -2
    assert test.root == ratfun("(x-1)*(x+5)^2/x")
    assert not is_constant_times_power(ratfun("(x-1)^2"), 3).flag


def test_order_split(poly):
    test = poly("(x-1)^3*(x-2)*(x^2+1)^2")
    pieces = dict((k, g) for g, k in order_split(poly("(x-1)*(x-2)*(x-3)*(x^2+1)"), test))
    assert pieces == {0: poly("x-3"), 1: poly("x-2"), 2: poly("x^2+1"), 3: poly("x-1")}


def test_split_by_orders_refines_against_every_test(poly):
    pieces = split_by_orders([poly("(x-1)*(x-2)*(x-3)")], [poly("(x-1)^2*(x-2)"), poly("(x-2)*(x-3)^4")])
    found = {g.coeffs[0].rational(): orders for g, orders in pieces}
    assert found == {-1: (2, 0), -2: (1, 1), -3: (0, 4)}


def test_polynomials_are_sympy_polys_over_the_field(poly, sqrt2):
    r = sqrt2.gen
    p = poly("x^2-2", sqrt2)
    assert isinstance(p.poly, sympy.Poly)
    assert p.poly.get_domain() == sqrt2.domain
    assert p.compose(poly("x+r", sqrt2)) == poly("x^2+2*r*x", sqrt2)
    assert poly("x^2-2").change_field(sqrt2) == p
    assert discriminant(poly("x^2-r", sqrt2)) == 4 * r
    with pytest.raises(FieldMismatch):
        p.change_field(QQ)


def test_resultant_over_number_field_vanishes_on_common_roots(poly, sqrt2):
    f = poly("(x-r)*(x+3)", sqrt2)
    assert resultant(f, poly("x^2-2", sqrt2)).is_zero()
    assert not resultant(f, poly("x^2-3", sqrt2)).is_zero()
