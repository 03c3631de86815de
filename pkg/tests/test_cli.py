"""Command-line behaviour: exit codes, output shape, determinism."""

from __future__ import annotations

import json

import pytest

from blowuplab import serialize_algebra, so3
from blowuplab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_so3(capsys):
    code, out, _ = run(
        capsys, "analyze", "--catalog", "so3", "--samples", "20", "--format", "machine"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"]["kind"] == "lifts_as_dirac_only"
    assert payload["verdict"]["constant_height"] == 1
    assert payload["verdict"]["classification"]["kind"] == "so3"


def test_analyze_sl2_reports_witnesses(capsys):
    code, out, _ = run(
        capsys, "analyze", "--catalog", "sl2", "--samples", "20", "--format", "machine"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"]["kind"] == "does_not_lift"
    assert sorted(payload["verdict"]["witness_heights"]) == [0, 1]


def test_analyze_heis3_spectrum(capsys):
    code, out, _ = run(
        capsys, "analyze", "--catalog", "heis3", "--samples", "60", "--format", "machine"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"]["kind"] == "does_not_lift"
    assert set(payload["spectrum"]["heights"]) == {"0", "1"}


def test_analyze_determinism_bytes(capsys):
    args = (
        "analyze",
        "--catalog",
        "heis3",
        "--format",
        "machine",
        "--seed",
        "1729",
        "--samples",
        "40",
    )
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_analyze_from_input_file(tmp_path, capsys):
    path = tmp_path / "so3.alg"
    path.write_text(serialize_algebra(so3()))
    code, out, _ = run(
        capsys, "analyze", "--input", str(path), "--samples", "15", "--format", "machine"
    )
    assert code == 0
    assert json.loads(out)["verdict"]["kind"] == "lifts_as_dirac_only"


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("schema_version: 1\ndimension: 3\nbracket: 1 2 3 0.5\n")
    code, _, err = run(capsys, "analyze", "--input", str(path))
    assert code == 1
    assert "parse error" in err

    code, _, err = run(capsys, "analyze", "--input", str(tmp_path / "missing.alg"))
    assert code == 1


def test_jacobi_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.alg"
    path.write_text(
        "schema_version: 1\ndimension: 3\n"
        "bracket: 1 2 3 1\nbracket: 2 3 2 1\nbracket: 1 3 2 -1\n"
    )
    code, _, err = run(capsys, "analyze", "--input", str(path))
    assert code == 2
    assert "(1, 2, 3)" in err


def test_usage_errors_exit_64(capsys):
    assert run(capsys, "crosscheck", "--catalog", "so3", "--samples", "0")[0] == 64
    assert run(capsys, "analyze", "--catalog", "nosuch")[0] == 64
    assert run(capsys, "analyze")[0] == 64
    assert run(capsys, "spinor", "--catalog", "so3", "--f", "y1")[0] == 64
    assert run(capsys, "spinor", "--catalog", "so3", "--chart", "9")[0] == 64
    assert run(capsys, "analyze", "--catalog", "scaled_so3_bundle")[0] == 64
    assert run(capsys, "catalog", "--filter", "weird")[0] == 64


def test_spinor_so3_chart_output(capsys):
    code, out, _ = run(
        capsys, "spinor", "--catalog", "so3", "--chart", "1", "--samples", "30"
    )
    assert code == 0
    assert "order: 1, certified" in out
    assert "x~1^2*x~2*dx~2" in out
    assert "1 + x~2^2 + x~3^2" in out


def test_spinor_abelian_chart2(capsys):
    code, out, _ = run(
        capsys, "spinor", "--catalog", "abelian3", "--chart", "2", "--samples", "30"
    )
    assert code == 0
    assert "order: 2, certified" in out


def test_spinor_bundle_falsified(capsys):
    code, out, _ = run(
        capsys,
        "spinor",
        "--catalog",
        "scaled_so3_bundle",
        "--f",
        "y1",
        "--chart",
        "1",
        "--format",
        "machine",
    )
    assert code == 0
    payload = json.loads(out)
    cert = payload["charts"]["1"]["certificate"]
    assert cert["status"] == "falsified"
    assert cert["order"] == 1
    assert "witness_point" in cert


def test_crosscheck_so3(capsys):
    code, out, _ = run(
        capsys, "crosscheck", "--catalog", "so3", "--samples", "30"
    )
    assert code == 0
    assert "0 mismatches" in out or "pointwise-consistent" in out


def test_crosscheck_heis3_nonconstant(capsys):
    code, out, _ = run(
        capsys, "crosscheck", "--catalog", "heis3", "--samples", "40"
    )
    assert code == 0
    assert "pointwise-consistent" in out
    assert "globally non-constant" in out


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    for name in ("so3", "sl2", "heis3", "abelian1", "diagonal_affine5", "scaled_so3_bundle"):
        assert name in out


def test_catalog_filter_dim3(capsys):
    code, out, _ = run(capsys, "catalog", "--filter", "dim=3")
    assert code == 0
    assert "so3" in out and "sl2" in out and "heis3" in out
    assert "abelian3" in out and "diagonal_affine2" in out
    assert "abelian4" not in out and "scaled_so3_bundle" not in out


def test_catalog_machine_stable(capsys):
    code1, out1, _ = run(capsys, "catalog", "--format", "machine")
    code2, out2, _ = run(capsys, "catalog", "--format", "machine")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert any(e["name"] == "so3" and e["expected_height"] == 1 for e in payload["entries"])


def test_internal_disagreement_exits_3(capsys, monkeypatch):
    import blowuplab.cli as cli_mod

    # a fabricated mismatch in a crosscheck report must surface as exit 3
    real = cli_mod.orbit_rank_crosscheck

    def broken(L, samples=100, seed=0):
        report = real(L, samples, seed)
        return type(report)(
            report.samples, report.records, report.records[:1], report.heights
        )

    monkeypatch.setattr(cli_mod, "orbit_rank_crosscheck", broken)
    code, _, err = run(capsys, "crosscheck", "--catalog", "so3", "--samples", "5")
    assert code == 3
    assert "internal disagreement" in err


def test_witness_search_cap_exits_3(tmp_path, capsys, monkeypatch):
    import blowuplab.classify as classify_mod

    # height-drop locus xi1^2 + xi2^2 = 3 xi3^2 has no rational points, so the
    # witness search must end in the loud diagnostic rather than a verdict
    monkeypatch.setattr(classify_mod, "WITNESS_CAP", 60)
    path = tmp_path / "aniso.alg"
    path.write_text(
        "schema_version: 1\nname: aniso\ndimension: 3\n"
        "bracket: 1 2 3 -3\nbracket: 2 3 1 1\nbracket: 1 3 2 -1\n"
    )
    code, _, err = run(capsys, "analyze", "--input", str(path), "--samples", "5")
    assert code == 3
    assert "witness" in err


def test_env_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("BLOWUPLAB_SEED", "7")
    code, out, _ = run(
        capsys, "analyze", "--catalog", "so3", "--samples", "10", "--format", "machine"
    )
    assert code == 0
    assert json.loads(out)["seed"] == 7
    # explicit --seed wins over the environment
    code, out, _ = run(
        capsys,
        "analyze",
        "--catalog",
        "so3",
        "--samples",
        "10",
        "--seed",
        "99",
        "--format",
        "machine",
    )
    assert json.loads(out)["seed"] == 99
    monkeypatch.setenv("BLOWUPLAB_SEED", "notanint")
    assert run(capsys, "analyze", "--catalog", "so3")[0] == 64
