from pathlib import Path

import pytest

from belyi.exactnum import QQ, field_create
from belyi.expressions import parse_polynomial, parse_ratfun

CATALOG_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def catalog_dir() -> Path:
    return CATALOG_DIR


@pytest.fixture
def sqrt2():
    return field_create(["-2", "0", "1"], "r")


@pytest.fixture
def sqrt3():
    return field_create(["-3", "0", "1"], "r")


@pytest.fixture
def gaussian():
    return field_create(["1", "0", "1"], "i")


@pytest.fixture
def eisenstein():
    return field_create(["1", "1", "1"], "w")


@pytest.fixture
def poly():
    """
    Polynomial over Q (or a given field) from an expression string
    """

    def make(text, field=QQ):
        return parse_polynomial(text, field)

    return make


@pytest.fixture
def ratfun():
    def make(text, field=QQ):
        return parse_ratfun(text, field)

    return make


@pytest.fixture
def phi1(ratfun):
    return ratfun("(x^3+1)^2/(4*x^3)")
