import json
from fractions import Fraction

import pytest

from belyi.belyi0 import BranchingPassport
from belyi.catalog import (
    KINDS,
    CatalogEntry,
    build_curve,
    build_genus0,
    build_genus1,
    build_isogeny,
    isogeny_with_recovered_y,
    load_catalog,
    load_entry,
)
from belyi.curves import j_invariant
from belyi.errors import MissingDependency, SchemaError
from belyi.verifiers import verifier_for
from belyi.verifiers.harness import exit_code, parse_filters, run_catalog, summary


def write(directory, name, data):
    path = directory / f"{name}.json"
    path.write_text(json.dumps(data))
    return path


def test_sections_are_collected(catalog_dir):
    entry = load_entry(catalog_dir / "phi1_cover.json")
    assert entry.name == "phi1_cover"
    assert entry.kind == "genus1-cover"
    assert entry.expected == {"passport": "6 3^2/4^3/2^6", "j": "0"}
    assert entry.metadata["tiling_id"] == "3.28"
    assert set(entry.payload) == {"genus0", "cover"}
    assert entry.references["genus0"].name == "phi1"
    assert entry.degree() == 12


def test_name_only_references(catalog_dir):
    entry = load_entry(catalog_dir / "comp_deg6.json")
    assert set(entry.references) == {"base", "isogeny"}
    built = build_genus1(entry)
    assert built.passport == BranchingPassport.parse("3^2/3^2/3^2")
    assert j_invariant(built.curve) == 54000


def test_inline_genus0_over_number_field(catalog_dir):
    entry = load_entry(catalog_dir / "map_f_cover.json")
    assert "genus0" not in entry.references
    assert entry.number_field().degree == 4
    assert build_genus1(entry).passport == BranchingPassport.parse(entry.expected["passport"])
    assert verifier_for(entry.kind).run(entry).passed


def test_builders(catalog_dir):
    assert build_genus0(load_entry(catalog_dir / "phi1.json")).degree == 6
    assert j_invariant(build_curve(load_entry(catalog_dir / "curve_ec28.json"))) == Fraction(21952, 9)
    iso = build_isogeny(load_entry(catalog_dir / "iso_deg6.json"))
    assert iso.degree == 2 and iso.R is not None
    assert isogeny_with_recovered_y(load_entry(catalog_dir / "iso_deg6.json")) == iso


def test_missing_reference(tmp_path):
    path = write(tmp_path, "cover", {"kind": "genus1-cover", "genus0": "nowhere.json", "cover": {"n": 2, "f": "x^3+1"}})
    with pytest.raises(MissingDependency):
        load_entry(path)
    with pytest.raises(MissingDependency):
        load_entry(tmp_path / "absent.json")
    with pytest.raises(MissingDependency):
        load_catalog(tmp_path / "no_such_dir")


def test_circular_reference(tmp_path):
    write(tmp_path, "a", {"kind": "genus1-isogeny-composite", "base": "b", "isogeny": "b"})
    path = write(tmp_path, "b", {"kind": "genus1-isogeny-composite", "base": "a", "isogeny": "a"})
    with pytest.raises(SchemaError):
        load_entry(path)


def test_schema_errors(tmp_path):
    bad_json = tmp_path / "broken.json"
    bad_json.write_text('{"kind": "genus0", ')
    with pytest.raises(SchemaError):
        load_entry(bad_json)
    with pytest.raises(SchemaError):
        load_entry(write(tmp_path, "bad_kind", {"kind": "genus7", "map": "x"}))
    with pytest.raises(SchemaError):
        load_entry(write(tmp_path, "bad_field", {"kind": "genus0", "field": {"generator": "a"}, "map": "x"}))


def test_filters(catalog_dir):
    entry = load_entry(catalog_dir / "phi1_cover.json")
    assert entry.matches("kind", "genus1-cover")
    assert entry.matches("degree", "12")
    assert entry.matches("tiling_id", "3.28")
    assert not entry.matches("gauge_theory", "F_0(I)")
    assert parse_filters(["kind=genus0", " degree = 6 "]) == [("kind", "genus0"), ("degree", "6")]
    with pytest.raises(SchemaError):
        parse_filters(["kind"])


def test_every_kind_has_a_verifier():
    for kind in KINDS:
        assert verifier_for(kind).kind == kind
    with pytest.raises(SchemaError):
        verifier_for("genus2")


def test_failed_claim_is_reported(tmp_path):
    write(tmp_path, "phi1", {"kind": "genus0", "map": "(x^3+1)^2/(4*x^3)"})
    path = write(
        tmp_path,
        "wrong",
        {"kind": "genus1-cover", "genus0": "phi1.json", "cover": {"n": 2, "f": "x^3+1"}, "expected_passport": "6 3^2/4^3/3^4"},
    )
    entry = load_entry(path)
    report = verifier_for(entry.kind).run(entry)
    assert not report.passed
    assert report.exit_code == 1
    assert [c.claim for c in report.failures] == ["passport"]


def test_run_over_a_directory_with_broken_files(tmp_path):
    write(tmp_path, "phi1", {"kind": "genus0", "map": "(x^3+1)^2/(4*x^3)", "expected_passport": "3^2/2^3/2^3"})
    (tmp_path / "broken.json").write_text("[")
    reports = run_catalog(tmp_path)
    assert [r.entry for r in reports] == ["broken", "phi1"]
    assert exit_code(reports) == 2
    table = summary(reports)
    assert list(table["exit"]) == [2, 0]


def test_filtered_run(catalog_dir):
    reports = run_catalog(catalog_dir, [("kind", "genus0")])
    assert reports and all(r.kind == "genus0" for r in reports)
    assert exit_code(reports) == 0


def test_entry_model_accepts_explicit_sections():
    entry = CatalogEntry.model_validate({"name": "x", "kind": "genus0", "map": "x", "expected": {"degree": 1}})
    assert entry.degree() == 1
    assert entry.payload == {"map": "x"}


def test_third_identity_entry(catalog_dir):
    entry = load_entry(catalog_dir / "hpg_third.json")
    report = verifier_for(entry.kind).run(entry)
    assert report.passed
    assert report.details["max_difference"] < 1e-10


@pytest.mark.slow
def test_shipped_catalog_verifies(catalog_dir):
    reports = run_catalog(catalog_dir)
    failures = {r.entry: [c.claim for c in r.failures] for r in reports if not r.passed}
    assert not failures
    assert exit_code(reports) == 0
    assert len(reports) == len(list(catalog_dir.glob("*.json")))
