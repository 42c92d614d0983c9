import json

import pytest

from belyi.catalog import load_entry
from belyi.cli import main


def test_verify_entry(catalog_dir, capsys):
    assert main(["verify", str(catalog_dir / "phi1_cover.json")]) == 0
    out = capsys.readouterr().out
    assert "phi1_cover (genus1-cover): PASS" in out
    assert "passport = 6 3^2/4^3/2^6" in out


def test_verify_json(catalog_dir, capsys):
    assert main(["verify", "--json", str(catalog_dir / "curve_ec28.json")]) == 0
    [report] = json.loads(capsys.readouterr().out)
    assert report["entry"] == "curve_ec28"
    assert all(check["status"] != "fail" for check in report["checks"])


def test_passport(catalog_dir, capsys):
    assert main(["passport", str(catalog_dir / "psi1_cover.json")]) == 0
    assert capsys.readouterr().out.strip() == "4^2/4^2/2^4"


@pytest.mark.parametrize("curve, expected", [("2:x^3-x", "1728"), ("x^3+1", "0"), ("3:x^2-x", "0")])
def test_j(capsys, curve, expected):
    assert main(["j", curve]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_j_of_entry(catalog_dir, capsys):
    assert main(["j", str(catalog_dir / "curve_ec28.json")]) == 0
    assert capsys.readouterr().out.strip() == "21952/9"


def test_compose_writes_an_entry(tmp_path, capsys):
    out = tmp_path / "built.json"
    assert main(["compose", "--genus0", "(x^3+1)^2/(4*x^3)", "--cover", "2:x^3+1", "-o", str(out)]) == 0
    assert "6 3^2/4^3/2^6" in capsys.readouterr().out
    entry = load_entry(out)
    assert entry.kind == "genus1-cover"
    assert entry.expected["passport"] == "6 3^2/4^3/2^6"
    assert main(["verify", str(out)]) == 0


def test_compose_rejects_bad_cover(capsys):
    assert main(["compose", "--genus0", "x", "--cover", "x^3+1"]) == 1
    assert "InvalidInput" in capsys.readouterr().err


def test_iso_verify(catalog_dir, capsys):
    assert main(["iso-verify", str(catalog_dir / "iso_deg6.json")]) == 0
    assert main(["iso-verify", str(catalog_dir / "phi1.json")]) == 1


def test_schema_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "genus5"}')
    assert main(["verify", str(path)]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2
    assert "SchemaError" in capsys.readouterr().err


def test_catalog_run_filtered(catalog_dir, capsys):
    assert main(["catalog", "run", str(catalog_dir), "--filter", "kind=genus0", "--json"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert reports and {r["kind"] for r in reports} == {"genus0"}
    assert all("wall_time" not in r for r in reports)


def test_catalog_run_table(catalog_dir, capsys):
    assert main(["catalog", "run", str(catalog_dir), "--filter", "name=phi1"]) == 0
    out = capsys.readouterr().out
    assert "phi1" in out and "1 passed, 0 failed" in out


def test_bad_filter(catalog_dir):
    assert main(["catalog", "run", str(catalog_dir), "--filter", "kind"]) == 2


def test_hpg_check(capsys):
    assert main(["hpg-check", "--samples", "4"]) == 0
    assert "max residual" in capsys.readouterr().out


@pytest.mark.slow
def test_monodromy_command(catalog_dir, capsys):
    assert main(["monodromy", "--json", str(catalog_dir / "phi1.json")]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["passport"] == "3^2/2^3/2^3"
    assert result["genus"] == 0


def test_bad_numeric_settings(catalog_dir, capsys):
    assert main(["verify", "--precision", "20", str(catalog_dir / "phi1.json")]) == 1
    assert "InvalidInput" in capsys.readouterr().err
    assert main(["j", "two:x^3-x"]) == 1


def test_internal_errors_are_not_swallowed(monkeypatch, catalog_dir):
    def broken(path):
        raise ValueError("internal")

    monkeypatch.setattr("belyi.cli.load_entry", broken)
    with pytest.raises(ValueError):
        main(["verify", str(catalog_dir / "phi1.json")])
