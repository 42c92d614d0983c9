from fractions import Fraction

import pytest

from belyi.belyi0 import BranchingPassport
from belyi.composer import explicit_map
from belyi.curves import SuperellipticCurve, j_invariant
from belyi.errors import CurveMismatch, InvalidInput
from belyi.exactnum import QQ
from belyi.expressions import parse_curve_function
from belyi.isogeny import (
    IsogenyMap,
    compose_isogeny,
    isogeny_from_xonly,
    rational_nth_root,
    two_descent_target,
    verify_isogeny_full,
    verify_isogeny_xonly,
)


@pytest.fixture
def e28(poly):
    return SuperellipticCurve(2, poly("(x+1)*(x-1)*(x-2)"))


def make_isogeny(poly, ratfun, source, target, u, R, degree, field=QQ):
    return IsogenyMap(
        SuperellipticCurve(2, poly(source, field)),
        SuperellipticCurve(2, poly(target, field)),
        ratfun(u, field),
        ratfun(R, field) if R is not None else None,
        degree,
    )


def test_full_check_degree_two(poly, ratfun):
    iso = make_isogeny(poly, ratfun, "x^3+6*x^2-3*x", "x^3+1", "(x-1)*(x+3)/(4*x)", "(x^2+3)/(8*x^2)", 2)
    report = verify_isogeny_full(iso)
    assert report.passed, report.failures
    assert j_invariant(iso.source) == 54000


def test_full_check_degree_three(poly, ratfun, sqrt3):
    iso = make_isogeny(
        poly,
        ratfun,
        "x*(x^2+8*r*x-14*r+24)",
        "x^3-6*r*x",
        "3*x*(x+3*r-3)^2/(3*x+5*r-9)^2",
        "3*r*(x+3*r-3)*(x^2+(2*r-6)*x-14*r+24)/(3*x+5*r-9)^3",
        3,
        sqrt3,
    )
    assert verify_isogeny_full(iso).passed


def test_multiplication_by_two(poly, ratfun):
    iso = make_isogeny(
        poly, ratfun, "x^3-x", "x^3-x", "(x^2+1)^2/(4*(x^3-x))", "(x^2+1)*(x^4-6*x^2+1)/(8*(x^3-x)^2)", 4
    )
    assert verify_isogeny_full(iso).passed


def test_wrong_y_component_fails(poly, ratfun):
    iso = make_isogeny(poly, ratfun, "x^3+6*x^2-3*x", "x^3+1", "(x-1)*(x+3)/(4*x)", "(x^2+3)/(4*x^2)", 2)
    report = verify_isogeny_full(iso)
    assert not report.passed
    assert [c.claim for c in report.failures] == ["curve identity"]


def test_stated_degree_is_checked(poly, ratfun):
    iso = make_isogeny(poly, ratfun, "x^3+6*x^2-3*x", "x^3+1", "(x-1)*(x+3)/(4*x)", "(x^2+3)/(8*x^2)", 3)
    assert [c.claim for c in verify_isogeny_full(iso).failures] == ["degree"]


@pytest.mark.parametrize(
    "source, u",
    [
        ("x^3-8*x^2+4*x", "(x^2+4)/(4*x)"),
        ("x^3+10*x^2+x", "(x^2+6*x+1)/(4*x)"),
        ("x^3-2*x^2+9*x", "(x^2+2*x+9)/(4*x)"),
    ],
)
def test_xonly_into_curve_28(poly, ratfun, e28, source, u):
    result = verify_isogeny_xonly(poly(source), e28.f, ratfun(u), 2)
    assert result.flag
    assert result.constant == Fraction(1, 64)
    assert result.nth_power is True
    iso = isogeny_from_xonly(SuperellipticCurve(2, poly(source)), e28, ratfun(u), 2)
    assert verify_isogeny_full(iso).passed


def test_xonly_needs_extension(poly, ratfun):
    result = verify_isogeny_xonly(poly("x^3+x"), poly("x^3-x"), ratfun("(x^2+1)/(2*x)"), 2)
    assert result.flag
    assert result.constant == Fraction(1, 8)
    assert result.nth_power is False
    with pytest.raises(InvalidInput):
        isogeny_from_xonly(
            SuperellipticCurve(2, poly("x^3+x")), SuperellipticCurve(2, poly("x^3-x")), ratfun("(x^2+1)/(2*x)"), 2
        )


def test_xonly_rejects_non_isogeny(poly, ratfun):
    assert not verify_isogeny_xonly(poly("x^3+x"), poly("x^3-x"), ratfun("(x^2+2)/(2*x)"), 2).flag


def test_xonly_constant_irrational_is_undetermined(poly, ratfun, sqrt2):
    result = verify_isogeny_xonly(poly("r*(x^3+x)", sqrt2), poly("x^3-x", sqrt2), ratfun("(x^2+1)/(2*x)", sqrt2), 2)
    assert result.flag
    assert result.nth_power is None


def test_rational_nth_root():
    assert rational_nth_root(QQ.from_rational("9/4"), 2) == Fraction(3, 2)
    assert rational_nth_root(QQ.from_rational("-27/8"), 3) == Fraction(-3, 2)
    assert rational_nth_root(QQ.from_rational(-4), 2) is None
    assert rational_nth_root(QQ.from_rational(2), 2) is None


def test_compose_isogeny_with_cube_root_map(poly, ratfun):
    e0 = SuperellipticCurve(2, poly("x^3+1"))
    base = explicit_map(parse_curve_function("(1+y)/2", e0))
    iso = make_isogeny(poly, ratfun, "x^3+6*x^2-3*x", "x^3+1", "(x-1)*(x+3)/(4*x)", "(x^2+3)/(8*x^2)", 2)
    composite = compose_isogeny(base, iso)
    assert composite.passport == BranchingPassport.parse("3^2/3^2/3^2")
    assert composite.value == parse_curve_function("1/2+y*(x^2+3)/(16*x^2)", iso.source)
    assert composite.provenance == "isogeny-composite"


def test_compose_isogeny_over_gaussian_field(poly, ratfun, gaussian):
    e1 = SuperellipticCurve(2, poly("x^3-x"))
    base = explicit_map(parse_curve_function("x^2", e1))
    iso = make_isogeny(
        poly,
        ratfun,
        "x^3-x",
        "x^3-x",
        "x*(x^2-(1+2*i))^2/((1+2*i)*x^2-1)^2",
        "(x^2-(1+2*i))*(x^4+(2+8*i)*x^2+1)/((1+2*i)*x^2-1)^3",
        5,
        gaussian,
    )
    composite = compose_isogeny(base, iso)
    assert composite.passport == BranchingPassport.parse("4^5/4^5/2^10")
    assert composite.field == gaussian


def test_compose_isogeny_curve_mismatch(poly, ratfun):
    base = explicit_map(parse_curve_function("x^2", SuperellipticCurve(2, poly("x^3-x"))))
    iso = make_isogeny(poly, ratfun, "x^3+6*x^2-3*x", "x^3+1", "(x-1)*(x+3)/(4*x)", "(x^2+3)/(8*x^2)", 2)
    with pytest.raises(CurveMismatch):
        compose_isogeny(base, iso)


@pytest.mark.parametrize("a, b", [(1, 1), (2, -1), (6, 1), (-4, 1), ("1/2", 3), (-8, 4)])
def test_two_descent(a, b):
    iso, cubic = two_descent_target(a, b)
    assert verify_isogeny_full(iso).passed
    # the moved Weierstrass cubic keeps a rational root at 0
    assert cubic.coeff(0) == 0
