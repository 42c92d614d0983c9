from fractions import Fraction

import pytest

from belyi.curves import CurveFunction, SuperellipticCurve
from belyi.errors import SchemaError
from belyi.exactnum import QQ
from belyi.expressions import (
    parse_curve,
    parse_curve_function,
    parse_optional_ratfun,
    parse_polynomial,
    parse_ratfun,
    parse_scalar,
)
from belyi.polyalg import Polynomial, RationalFunction


def test_scalars(sqrt2):
    assert parse_scalar("3/4", QQ) == Fraction(3, 4)
    assert parse_scalar(5, QQ) == 5
    assert parse_scalar(["1", "2"], sqrt2) == 1 + 2 * sqrt2.gen
    assert parse_scalar("(1+r)^2", sqrt2) == 3 + 2 * sqrt2.gen
    assert parse_scalar("1/(1+r)", sqrt2) == sqrt2.gen - 1
    with pytest.raises(SchemaError):
        parse_scalar(["1", "2", "3"], sqrt2)
    with pytest.raises(SchemaError):
        parse_scalar(True, QQ)


def test_generator_powers_are_reduced():
    from belyi.exactnum import field_create

    nf = field_create(["756", "0", "56", "0", "1"], "b")
    sqrt7 = parse_scalar("(b^2+28)/2", nf)
    assert sqrt7 * sqrt7 == 7
    assert parse_scalar("b^4+56*b^2", nf) == -756


def test_polynomials_from_strings_and_arrays(poly):
    assert parse_polynomial("(x+1)^2", QQ) == Polynomial(QQ, (1, 2, 1))
    assert parse_polynomial(["1", "2", "1"], QQ) == poly("x^2+2*x+1")
    assert parse_polynomial("x^2/4", QQ) == Polynomial(QQ, (0, 0, Fraction(1, 4)))
    with pytest.raises(SchemaError):
        parse_polynomial("1/x", QQ)


def test_rational_functions(phi1):
    assert parse_ratfun({"num": ["1", "0", "0", "2", "0", "0", "1"], "den": ["0", "0", "0", "4"]}, QQ) == phi1
    assert parse_ratfun("x^3/4 + 1/2 + 1/(4*x^3)", QQ) == phi1
    assert parse_optional_ratfun(None, QQ) is None
    with pytest.raises(SchemaError):
        parse_ratfun("x/(x-x)", QQ)


def test_bad_expressions():
    with pytest.raises(SchemaError):
        parse_ratfun("x^2 + z", QQ)
    with pytest.raises(SchemaError):
        parse_ratfun("(x+1", QQ)
    with pytest.raises(SchemaError):
        parse_ratfun("sqrt(x)", QQ)


def test_generator_clash():
    from belyi.exactnum import field_create

    with pytest.raises(SchemaError):
        parse_ratfun("x+1", field_create(["-2", "0", "1"], "x"))


def test_curves():
    curve = parse_curve({"n": 2, "f": "x*(x+1)*(x-7)", "factors": ["x", "x+1", "x-7"]}, QQ)
    assert curve.f.degree == 3
    assert len(curve.factors) == 3
    with pytest.raises(SchemaError):
        parse_curve({"n": 2, "f": "x^3+1", "factors": ["x+1", "x^2+1"]}, QQ)
    with pytest.raises(SchemaError):
        parse_curve("x^3+1", QQ)


def test_factors_may_differ_by_a_scalar():
    curve = parse_curve({"n": 2, "f": "5*x^2-5", "factors": ["x-1", "x+1"]}, QQ)
    assert curve.factors[0] == Polynomial(QQ, (-1, 1))


def test_curve_functions_reduce_through_the_relation(poly):
    curve = SuperellipticCurve(2, poly("x^3+1"))
    y = CurveFunction.y(curve)
    assert parse_curve_function("y^2", curve) == CurveFunction.from_rational(curve, RationalFunction.create(poly("x^3+1")))
    assert parse_curve_function("y*(y^2-9)/(y^2-1)", curve) == y * poly("x^3-8") / poly("x^3")
    assert parse_curve_function("1/y", curve) == y / poly("x^3+1")
    assert parse_curve_function(["x", "1"], curve) == CurveFunction.x(curve) + y


def test_cubic_curve_functions(poly):
    curve = SuperellipticCurve(3, poly("x^2-x"))
    value = parse_curve_function("y^4", curve)
    assert value == CurveFunction.y(curve) * poly("x^2-x")
