import json
from pathlib import Path

import pytest

from belyi.belyi0 import BranchingPassport, Genus0BelyiMap
from belyi.catalog import build_genus0, build_genus1, load_entry
from belyi.composer import CoverSpec, compose_with_cover
from belyi.config import NumericSettings
from belyi.errors import InvalidInput, PrecisionError
from belyi.monodromy import (
    PermutationTriple,
    compose,
    continuation_attempts,
    critical_values_numeric,
    cycle_type,
    cycles,
    genus_from_triple,
    invert,
    is_belyi_numeric,
    loops_are_clear,
    monodromy_at,
    permutation_triple,
    triples_equivalent,
)
from belyi.verifiers.base import NUMERIC_MAX_DEGREE

P = BranchingPassport.parse
CATALOG_DIR = Path(__file__).resolve().parent.parent / "data"
MAP_KINDS = ("genus0", "genus1-cover", "genus1-explicit", "genus1-isogeny-composite")


def map_entries():
    return sorted(p.stem for p in CATALOG_DIR.glob("*.json") if json.loads(p.read_text()).get("kind") in MAP_KINDS)


def test_permutation_basics():
    p = (1, 2, 0, 4, 3)
    assert compose(p, invert(p)) == tuple(range(5))
    assert cycles(p) == [(0, 1, 2), (3, 4)]
    assert cycle_type(p) == (3, 2)
    # first, then second
    assert compose((1, 0, 2), (0, 2, 1)) == (2, 0, 1)


def test_triple_passport_and_genus():
    # the torus dessin of x^2 on y^2 = x^3 - x: one 4-cycle over 0 and over 1
    triple = PermutationTriple.from_pair((1, 2, 3, 0), (1, 2, 3, 0))
    assert triple.passport() == P("2^2/4/4")
    assert genus_from_triple(triple) == 1
    assert triple.is_transitive()
    assert triple.to_cycles()["sigma0"] == "(1 2 3 4)"


def test_planar_triple():
    triple = PermutationTriple.from_pair((1, 0, 2), (0, 2, 1))
    assert genus_from_triple(triple) == 0
    assert triple.passport() == P("3/2 1/2 1")


def test_triple_validation():
    with pytest.raises(InvalidInput):
        PermutationTriple((1, 0), (1, 0), (1, 0))
    with pytest.raises(InvalidInput):
        PermutationTriple.from_pair((0, 0), (1, 0))
    assert not PermutationTriple.from_pair((1, 0, 2, 3), (0, 1, 3, 2)).is_transitive()


def test_conjugate_triples_are_equivalent():
    triple = PermutationTriple.from_pair((1, 2, 0, 3), (0, 1, 3, 2))
    relabelled = triple.conjugate((2, 3, 1, 0))
    assert relabelled != triple
    assert triples_equivalent(triple, relabelled)
    assert relabelled.passport() == triple.passport()


def test_inequivalent_triples():
    first = PermutationTriple.from_pair((1, 0, 3, 2), (0, 2, 1, 3))
    second = PermutationTriple.from_pair((1, 0, 3, 2), (2, 3, 0, 1))
    assert first.passport().fiber(0) == second.passport().fiber(0)
    assert not triples_equivalent(first, second)


def test_numeric_settings_validation(monkeypatch):
    monkeypatch.setenv("BELYI_PRECISION", "160")
    assert NumericSettings.from_env().precision == 160
    assert NumericSettings.from_env(precision=96).precision == 96
    with pytest.raises(ValueError):
        NumericSettings(precision=20)
    with pytest.raises(ValueError):
        NumericSettings(cluster_tol=0)
    with pytest.raises(InvalidInput):
        NumericSettings.from_env(precision=20)
    monkeypatch.setenv("BELYI_PATH_STEPS", "many")
    with pytest.raises(InvalidInput):
        NumericSettings.from_env()


def test_critical_values_of_genus0_map(phi1):
    values = critical_values_numeric(phi1)
    assert is_belyi_numeric(values, 1e-6)
    assert not is_belyi_numeric(critical_values_numeric(phi1 - 2), 1e-6)


@pytest.mark.slow
def test_monodromy_of_genus0_map(phi1):
    triple = permutation_triple(Genus0BelyiMap.create(phi1))
    assert triple.passport() == P("3^2/2^3/2^3")
    assert genus_from_triple(triple) == 0


@pytest.mark.slow
def test_monodromy_of_genus1_cover(phi1, poly):
    built = compose_with_cover(Genus0BelyiMap.create(phi1), CoverSpec(2, poly("x^3+1")))
    triple = permutation_triple(built)
    assert triple.passport() == built.passport
    assert genus_from_triple(triple) == 1
    assert is_belyi_numeric(critical_values_numeric(built), 1e-6)


@pytest.mark.slow
def test_catalog_dessins_with_one_passport_differ(catalog_dir):
    first = build_genus1(load_entry(catalog_dir / "phi3_cover_a.json"))
    second = build_genus1(load_entry(catalog_dir / "phi3_cover_b.json"))
    assert first.passport == second.passport
    assert not triples_equivalent(permutation_triple(first), permutation_triple(second))


def test_loop_choices():
    assert loops_are_clear(0.5 + 0.25j, 0.25)
    assert loops_are_clear(0.5 - 0.25j, 0.3)
    # the segment from 1.5 to the circle around 0 runs through 1
    assert not loops_are_clear(1.5 + 0j, 0.25)
    assert not loops_are_clear(0.1j, 0.25)
    assert not loops_are_clear(0.5 + 0.25j, 0.6)


def test_continuation_attempts_raise_the_precision():
    attempts = continuation_attempts(NumericSettings(precision=256))
    precisions = [precision for precision, _, _ in attempts]
    assert precisions[0] == 53 and precisions[-2:] == [256, 512]
    assert len({(base, radius) for _, base, radius in attempts}) > 2
    assert all(precision == 53 for precision, _, _ in continuation_attempts(NumericSettings(precision=53)))
    with pytest.raises(InvalidInput):
        continuation_attempts(NumericSettings(base_point=0.05j))


def test_every_attempt_failing_is_a_precision_error(monkeypatch, phi1):
    calls = []

    def stalled(map, settings, precision, base, radius):
        calls.append(precision)
        raise PrecisionError("stalled")

    monkeypatch.setattr("belyi.monodromy.monodromy_at", stalled)
    settings = NumericSettings(precision=96)
    with pytest.raises(PrecisionError):
        permutation_triple(Genus0BelyiMap.create(phi1), settings)
    assert calls == [precision for precision, _, _ in continuation_attempts(settings)]


@pytest.mark.slow
def test_double_failure_moves_to_mpmath(monkeypatch, phi1):
    seen = []
    tracked = monodromy_at

    def no_double(map, settings, precision, base, radius):
        seen.append(precision)
        if precision == 53:
            raise PrecisionError("stalled")
        return tracked(map, settings, precision, base, radius)

    monkeypatch.setattr("belyi.monodromy.monodromy_at", no_double)
    triple = permutation_triple(Genus0BelyiMap.create(phi1), NumericSettings(precision=96))
    assert triple.passport() == P("3^2/2^3/2^3")
    assert seen[-1] == 96 and set(seen) == {53, 96}


@pytest.mark.slow
def test_tracking_precision_and_loop_choice_agree(phi1):
    g0 = Genus0BelyiMap.create(phi1)
    settings = NumericSettings()
    double = monodromy_at(g0, settings, 53, settings.base_point)
    assert monodromy_at(g0, settings, 128, settings.base_point) == double
    assert triples_equivalent(monodromy_at(g0, settings, 53, 0.5 - 0.25j, 0.3), double)


@pytest.mark.slow
@pytest.mark.parametrize("name", map_entries())
def test_catalog_monodromy_matches_passport(catalog_dir, name):
    entry = load_entry(catalog_dir / f"{name}.json")
    built = build_genus0(entry) if entry.kind == "genus0" else build_genus1(entry)
    if built.degree > NUMERIC_MAX_DEGREE:
        pytest.skip(f"degree {built.degree} is beyond the numeric checks")
    triple = permutation_triple(built)
    assert triple.passport() == built.passport
    assert genus_from_triple(triple) == (0 if entry.kind == "genus0" else 1)
