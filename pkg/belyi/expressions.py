"""
Decode the polynomial, rational-function and function-field values written in catalog files.

Values are either expression strings such as "(x^3+1)^2/(4*x^3)" or "(1+y)/2" (parsed by sympy and converted
to exact field arithmetic), or the array forms: a field element as a list of basis coordinates, a polynomial as a
list of ascending coefficients, a rational function as {"num": ..., "den": ...}.
"""
from fractions import Fraction
from tokenize import TokenError
from typing import Any, Dict, Optional, Tuple

from sympy import Poly, Symbol, fraction, together
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from belyi.curves import CurveFunction, SuperellipticCurve
from belyi.errors import InvalidInput, SchemaError
from belyi.exactnum import FieldElement, NumberField, parse_rational
from belyi.polyalg import Polynomial, RationalFunction

TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _symbols(field: NumberField, variables: Tuple[str, ...]) -> Dict[str, Symbol]:
    names = list(variables)
    if not field.is_rational:
        if field.generator in names:
            raise SchemaError(f"field generator {field.generator!r} clashes with a variable name")
        names.append(field.generator)
    return {name: Symbol(name) for name in names}


def _parse(text: str, symbols: Dict[str, Symbol]):
    try:
        expr = parse_expr(text, local_dict=dict(symbols), transformations=TRANSFORMATIONS)
    except (SympifyError, SyntaxError, TypeError, TokenError) as exc:
        raise SchemaError(f"cannot parse expression {text!r}: {exc}") from exc
    unknown = {str(s) for s in expr.free_symbols} - set(symbols)
    if unknown:
        raise SchemaError(f"expression {text!r} uses unknown symbols {sorted(unknown)}")
    return expr


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _monomials(expr, symbols: Dict[str, Symbol], variables: Tuple[str, ...], field: NumberField):
    """
    {exponent tuple over variables: field coefficient} for a polynomial expression
    """
    gens = [symbols[v] for v in variables]
    if not field.is_rational:
        gens.append(symbols[field.generator])
    if not gens:
        gens = [Symbol("_unused")]
    try:
        poly = Poly(expr, *gens, domain="QQ")
    except Exception as exc:
        raise SchemaError(f"{expr} is not a polynomial with rational coefficients: {exc}") from exc
    out: Dict[Tuple[int, ...], list] = {}
    width = len(variables)
    for monomial, coeff in poly.terms():
        key = tuple(monomial[:width])
        power = monomial[width] if not field.is_rational else 0
        coords = out.setdefault(key, [])
        coords.extend([Fraction(0)] * (power + 1 - len(coords)))
        coords[power] += _to_fraction(coeff)
    return {key: field.element(coords) for key, coords in out.items()}


def parse_scalar(value: Any, field: NumberField) -> FieldElement:
    """
    A field element from "p/q", an integer, a list of basis coordinates or an expression in the generator
    """
    if isinstance(value, FieldElement):
        return field.lift(value)
    if isinstance(value, bool):
        raise SchemaError("booleans are not field elements")
    if isinstance(value, (int, Fraction)):
        return field.from_rational(value)
    if isinstance(value, list):
        if len(value) > field.degree:
            raise SchemaError(f"{len(value)} coordinates for a field of degree {field.degree}")
        try:
            return field.element([parse_rational(c) for c in value])
        except InvalidInput as exc:
            raise SchemaError(str(exc)) from exc
    if isinstance(value, str):
        try:
            return field.from_rational(parse_rational(value))
        except InvalidInput:
            pass
        symbols = _symbols(field, ())
        num, den = fraction(together(_parse(value, symbols)))
        top = _monomials(num, symbols, (), field).get((), field.zero)
        bottom = _monomials(den, symbols, (), field).get((), field.zero)
        if bottom.is_zero():
            raise SchemaError(f"{value!r} divides by zero")
        return top / bottom
    raise SchemaError(f"cannot read a field element from {value!r}")


def _polynomial_from(terms: Dict[Tuple[int, ...], FieldElement], field: NumberField) -> Polynomial:
    degree = max((k[0] for k in terms), default=0)
    coeffs = [field.zero] * (degree + 1)
    for (k,), c in terms.items():
        coeffs[k] = coeffs[k] + c
    return Polynomial(field, tuple(coeffs))


def parse_polynomial(value: Any, field: NumberField, var: str = "x") -> Polynomial:
    if isinstance(value, list):
        return Polynomial(field, tuple(parse_scalar(c, field) for c in value))
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Polynomial.constant(field, value)
    if isinstance(value, str):
        symbols = _symbols(field, (var,))
        num, den = fraction(together(_parse(value, symbols)))
        if symbols[var] in den.free_symbols:
            raise SchemaError(f"{value!r} is not a polynomial in {var}")
        bottom = _monomials(den, symbols, (), field).get((), field.zero)
        return _polynomial_from(_monomials(num, symbols, (var,), field), field).scale(bottom.inverse())
    raise SchemaError(f"cannot read a polynomial from {value!r}")


def parse_ratfun(value: Any, field: NumberField, var: str = "x") -> RationalFunction:
    if isinstance(value, dict):
        if "num" not in value:
            raise SchemaError("a rational function needs a 'num' entry")
        num = parse_polynomial(value["num"], field, var)
        den = parse_polynomial(value.get("den", ["1"]), field, var)
        if den.is_zero():
            raise SchemaError("zero denominator")
        return RationalFunction.create(num, den)
    if isinstance(value, str):
        symbols = _symbols(field, (var,))
        num, den = fraction(together(_parse(value, symbols)))
        top = _polynomial_from(_monomials(num, symbols, (var,), field), field)
        bottom = _polynomial_from(_monomials(den, symbols, (var,), field), field)
        if bottom.is_zero():
            raise SchemaError(f"{value!r} divides by zero")
        return RationalFunction.create(top, bottom)
    return RationalFunction.create(parse_polynomial(value, field, var))


def parse_curve(value: Any, field: NumberField) -> SuperellipticCurve:
    """
    {"n": 2, "f": ..., "factors": [...]} with an optional variable name under "var"
    """
    if not isinstance(value, dict) or "f" not in value:
        raise SchemaError(f"a curve is an object with 'n' and 'f', got {value!r}")
    var = value.get("var", "x")
    f = parse_polynomial(value["f"], field, var)
    factors = tuple(parse_polynomial(g, field, var) for g in value.get("factors", ()))
    if factors:
        product = Polynomial.constant(field, 1)
        for g in factors:
            product = product * g
        if product.monic() != f.monic():
            raise SchemaError(f"factors {[str(g) for g in factors]} do not multiply to {f}")
    return SuperellipticCurve(int(value.get("n", 2)), f, factors)


def parse_curve_function(value: Any, curve: SuperellipticCurve, variables: Tuple[str, str] = ("x", "y")) -> CurveFunction:
    """
    An element of the function field: an expression in x, y (y may appear in denominators and in any power),
    or a list of parts r_i so the value is sum(y^i r_i)
    """
    field = curve.field
    x_name, y_name = variables
    if isinstance(value, list):
        return CurveFunction(curve, tuple(parse_ratfun(p, field, x_name) for p in value))
    if not isinstance(value, str):
        return CurveFunction.from_rational(curve, parse_ratfun(value, field, x_name))
    symbols = _symbols(field, (x_name, y_name))
    num, den = fraction(together(_parse(value, symbols)))
    top = _curve_polynomial(num, symbols, variables, curve)
    bottom = _curve_polynomial(den, symbols, variables, curve)
    if bottom.is_zero():
        raise SchemaError(f"{value!r} vanishes identically in its denominator")
    return top / bottom


def _curve_polynomial(expr, symbols, variables, curve: SuperellipticCurve) -> CurveFunction:
    field = curve.field
    by_y: Dict[int, Dict[Tuple[int], FieldElement]] = {}
    for (i, j), c in _monomials(expr, symbols, variables, field).items():
        by_y.setdefault(j, {})[(i,)] = c
    total = CurveFunction.from_rational(curve, 0)
    y = CurveFunction.y(curve)
    for j, terms in by_y.items():
        total = total + y ** j * _polynomial_from(terms, field)
    return total


def parse_optional_ratfun(value: Any, field: NumberField, var: str = "x") -> Optional[RationalFunction]:
    return None if value is None else parse_ratfun(value, field, var)
