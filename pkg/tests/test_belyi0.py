import pytest

from belyi.belyi0 import BranchingPassport, Genus0BelyiMap, fiber_structure, passport, verify_belyi0
from belyi.errors import InvalidInput, NotBelyi

GENUS0_MAPS = [
    ("(x^3+1)^2/(4*x^3)", "3^2/2^3/2^3"),
    ("-(x^2-4)^3/(27*x^4)", "4 2/3^2/2^2 1^2"),
    ("x^3*(x-2)^3/(2*x-1)^3", "3^2/3^2/2^2 1^2"),
    ("-x^2*(4*x+5)^3/(5*x+4)^3", "3 2/3 2/2^2 1"),
    ("x^2*(x+5)^3/(5*x+1)^3", "3 2/3 2/3 1^2"),
    ("-x^4*(x-7)^3/(7*x-1)^3", "4 3/4 3/3 1^4"),
    ("-5*(x^2-10)^4/(4*x^5*(x-8)^3)", "5 3/4^2/2^2 1^4"),
    ("(x+1)^4/(16*x^2)", "2^2/4/2 1^2"),
    ("x*(x+4)^3/(4*(2*x-1)^3)", "3 1/3 1/2^2"),
]


def test_parse_forms_agree():
    canonical = BranchingPassport.parse("6 3^2/4^3/2^6")
    assert BranchingPassport.parse("3^2 6/4^3/2^6") == canonical
    assert BranchingPassport.parse("3 3 6/4 4 4/2 2 2 2 2 2") == canonical
    assert BranchingPassport.parse("[6 3²/4³/2⁶]") == canonical
    assert str(canonical) == "6 3^2/4^3/2^6"
    assert canonical.degree == 12
    assert canonical.fiber("inf") == (6, 3, 3)
    assert canonical.fiber(0) == (4, 4, 4)


@pytest.mark.parametrize("text", ["3/3", "3/3/x", "3/2/1", "3//3"])
def test_parse_rejects_malformed(text):
    with pytest.raises(InvalidInput):
        BranchingPassport.parse(text)


def test_genus_from_passport():
    assert BranchingPassport.parse("3^2/2^3/2^3").genus() == 0
    assert BranchingPassport.parse("6 3^2/4^3/2^6").genus() == 1
    assert BranchingPassport.parse("3/3/3").genus() == 1


@pytest.mark.parametrize("text, expected", GENUS0_MAPS)
def test_known_maps_are_belyi(ratfun, text, expected):
    report = verify_belyi0(ratfun(text))
    assert report.passed
    assert passport(ratfun(text)) == BranchingPassport.parse(expected)
    assert report.details["deficit"] == 0


def test_fiber_structure_counts_infinity(phi1, ratfun):
    assert fiber_structure(phi1, "inf") == (3, 3)
    assert fiber_structure(phi1, 0) == (2, 2, 2)
    assert fiber_structure(ratfun("x^2"), "∞") == (2,)
    with pytest.raises(InvalidInput):
        fiber_structure(phi1, 2)


def test_map_over_number_field(ratfun, sqrt3):
    psi3 = ratfun("r*x^2*(x+3*r-3)^4/(2*(3*x+5*r-9)^4)", sqrt3)
    assert str(passport(psi3)) == "4 2/4 2/2^2 1^2"


def test_non_belyi_map_reports_deficit(ratfun):
    report = verify_belyi0(ratfun("x^3-3*x"))
    assert not report.passed
    # critical values 2 and -2 are off 0, 1, infinity
    assert report.details["deficit"] == 2
    with pytest.raises(NotBelyi):
        Genus0BelyiMap.create(ratfun("x^3-3*x"))


def test_genus0_map_change_field(phi1, sqrt2):
    lifted = Genus0BelyiMap.create(phi1).change_field(sqrt2)
    assert lifted.field == sqrt2
    assert lifted.passport == BranchingPassport.parse("3^2/2^3/2^3")
