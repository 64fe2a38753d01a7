import io
import json

import pandas as pd
import pytest

from src.cli import EXIT_OK, EXIT_RESOURCE, EXIT_VALIDATION, EXIT_VERIFICATION, main
from src.spectra import enumerate_spectrum, make_quotient, spectral_sum


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(text):
    return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)


# =============================================================================
# quotient / count / enumerate
# =============================================================================

def test_quotient_summary(capsys):
    code, out, err = run(capsys, "quotient", "--d", "2", "--ell", "1,2")
    assert code == EXIT_OK
    frame = read_csv(out)
    assert list(frame.columns) == ["d", "ell", "c", "scale", "L", "volume", "lattice", "dual_lattice"]
    assert frame.loc[0, "L"] == "2"
    assert frame.loc[0, "volume"] == "2/1"
    assert "HEISENBERG SPECTRA: QUOTIENT" in err


def test_bad_chain_exits_validation(capsys):
    code, out, err = run(capsys, "quotient", "--d", "2", "--ell", "2,3")
    assert code == EXIT_VALIDATION
    assert out == ""
    assert "error:" in err


def test_count_canonical(capsys):
    code, out, _ = run(capsys, "count", "--lambda", "7.86")
    assert code == EXIT_OK
    frame = read_csv(out)
    assert list(frame.columns) == ["lambda", "N_a", "N_b", "N", "ratio"]
    assert (frame.loc[0, "N_a"], frame.loc[0, "N_b"], frame.loc[0, "N"]) == ("34", "20", "54")


def test_count_below_gap(capsys):
    code, out, _ = run(capsys, "count", "--lambda", "0.5,1.0")
    assert code == EXIT_OK
    frame = read_csv(out)
    assert frame["N"].tolist() == ["0", "0"]
    assert frame["ratio"].tolist() == ["0.0", "0.0"]


def test_count_forms_doubles_scalar(capsys):
    geometry = ["--d", "2", "--ell", "1,1", "--lambda", "5,20"]
    _, scalar_out, _ = run(capsys, "count", *geometry)
    code, forms_out, _ = run(capsys, "count", "--forms", "0,1", *geometry)
    assert code == EXIT_OK
    scalar = read_csv(scalar_out)
    forms = read_csv(forms_out)
    assert forms["p"].tolist() == ["0", "0"]
    assert forms["q"].tolist() == ["1", "1"]
    assert [int(v) for v in forms["N"]] == [2 * int(v) for v in scalar["N"]]


def test_alpha_and_forms_are_exclusive(capsys):
    code, _, _ = run(capsys, "count", "--d", "2", "--ell", "1,1", "--alpha", "0", "--forms", "0,1",
                     "--lambda", "5")
    assert code == EXIT_VALIDATION


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--lambda", "7.86", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["config"]["command"] == "count"
    assert payload["config"]["alpha"] == "0"
    assert payload["rows"][0]["N_a"] == 34
    assert payload["rows"][0]["N"] == 54


def test_enumerate_budget_exits_resource(capsys):
    code, out, err = run(capsys, "enumerate", "--lambda-max", "100", "--budget", "5")
    assert code == EXIT_RESOURCE
    assert out == ""
    assert "budget" in err


def test_enumerate_below_gap_is_header_only(capsys):
    code, out, _ = run(capsys, "enumerate", "--lambda-max", "0.1")
    assert code == EXIT_OK
    assert out == "kind,exact_value,float_value,multiplicity,sources\n"


def test_enumerate_rows(capsys):
    code, out, _ = run(capsys, "enumerate", "--lambda-max", "4.8", "--no-type-b")
    assert code == EXIT_OK
    frame = read_csv(out)
    assert frame["kind"].tolist() == ["a", "a", "a"]
    assert frame["multiplicity"].tolist() == ["2", "4", "8"]
    assert frame.loc[0, "sources"] == "n=1 j=0 m=1;n=-1 j=0 m=1"


# =============================================================================
# heat / constant
# =============================================================================

def test_heat_matches_spectral_sum(capsys):
    code, out, _ = run(capsys, "heat", "--t", "1")
    assert code == EXIT_OK
    g = float(read_csv(out).loc[0, "G"])
    q = make_quotient(1, (1,), 1)
    direct = spectral_sum(enumerate_spectrum(q, 0, 90.0, include_type_b=False), 1.0)
    assert g == pytest.approx(direct, rel=1e-9)


def test_heat_rejects_tiny_t(capsys):
    code, _, err = run(capsys, "heat", "--t", "1e-9")
    assert code == EXIT_VALIDATION
    assert "error:" in err


def test_heat_tol_is_routed(capsys):
    _, default_out, _ = run(capsys, "heat", "--t", "1e-3")
    code, loose_out, _ = run(capsys, "heat", "--t", "1e-3", "--heat-tol", "1e-3")
    assert code == EXIT_OK
    assert int(read_csv(loose_out).loc[0, "terms"]) < int(read_csv(default_out).loc[0, "terms"])
    _, json_out, _ = run(capsys, "heat", "--t", "1e-3", "--heat-tol", "1e-6", "--format", "json")
    assert json.loads(json_out)["config"]["heat_tol"] == 1e-6


def test_bad_heat_tol_exits_validation(capsys):
    code, out, _ = run(capsys, "heat", "--t", "1", "--heat-tol", "0")
    assert code == EXIT_VALIDATION
    assert out == ""


def test_constant(capsys):
    code, out, _ = run(capsys, "constant", "--d", "1", "--alpha", "0")
    assert code == EXIT_OK
    frame = read_csv(out)
    assert frame.loc[0, "formula"] == "interior"
    assert float(frame.loc[0, "value"]) == pytest.approx(0.5, abs=1e-8)


def test_constant_boundary_check(capsys):
    code, out, _ = run(capsys, "constant", "--d", "1", "--boundary-check")
    assert code == EXIT_OK
    frame = read_csv(out)
    assert frame["formula"].tolist() == ["interior", "boundary", "interior"]
    assert float(frame.loc[1, "value"]) == pytest.approx(1 / 6, abs=1e-8)


# =============================================================================
# verify
# =============================================================================

def test_verify_passes(capsys):
    code, out, err = run(capsys, "verify", "--lambda-decades", "2:5")
    assert code == EXIT_OK
    frame = read_csv(out)
    assert frame["route"].tolist() == ["count"] * 4
    assert abs(float(frame["rel_error"].iloc[-1])) < 0.01
    assert "verification passed" in err


def test_verify_threshold_failure(capsys):
    code, out, err = run(capsys, "verify", "--lambda-decades", "1:2", "--pass-threshold", "1e-12")
    assert code == EXIT_VERIFICATION
    assert len(read_csv(out)) == 2
    assert "verification failed" in err


def test_verify_with_heat(capsys):
    code, out, _ = run(capsys, "verify", "--lambda-decades", "2:4", "--heat", "1e-3,1e-4")
    assert code == EXIT_OK
    frame = read_csv(out)
    heat = frame[frame["route"] == "heat"]
    assert heat["t"].tolist() == ["0.001", "0.0001"]
    assert (heat["N"] == "").all()
    errors = [abs(float(v)) for v in heat["rel_error"]]
    assert max(errors) < 0.05
    assert errors[-1] < 0.01


def test_verify_judges_count_rows_only(capsys):
    # t = 1 is far from the small-t limit; the heat row is reported, not judged
    code, out, err = run(capsys, "verify", "--lambda-decades", "2:5", "--heat", "1", "--pass-threshold", "0.01")
    assert code == EXIT_OK
    frame = read_csv(out)
    heat = frame[frame["route"] == "heat"]
    assert abs(float(heat["rel_error"].iloc[0])) > 0.01
    assert "heat route" in err
    assert "verification passed" in err


def test_verify_svg_format(capsys):
    code, out, _ = run(capsys, "verify", "--lambda-decades", "1:3", "--format", "svg")
    assert code == EXIT_OK
    assert out.startswith("<?xml")
    assert "series-ratio" in out


def test_svg_only_for_verify(capsys):
    code, _, _ = run(capsys, "count", "--lambda", "10", "--format", "svg")
    assert code == EXIT_VALIDATION


def test_verify_writes_files(capsys, tmp_path):
    table = tmp_path / "out" / "verify.csv"
    chart = tmp_path / "verify.svg"
    code, out, _ = run(capsys, "verify", "--lambda-decades", "1:3", "--out", str(table), "--svg", str(chart))
    assert code == EXIT_OK
    assert out == ""
    assert table.read_text().startswith("route,lambda,t,")
    assert chart.read_text().startswith("<?xml")


# =============================================================================
# argument handling
# =============================================================================

def test_output_is_deterministic(capsys):
    argv = ["count", "--d", "2", "--ell", "1,2", "--c", "2/3", "--alpha", "1/2", "--lambda", "3,30"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_missing_required_flag(capsys):
    code, out, _ = run(capsys, "count")
    assert code == EXIT_VALIDATION
    assert out == ""


def test_descending_lambda_grid_rejected(capsys):
    code, _, _ = run(capsys, "count", "--lambda", "10,5")
    assert code == EXIT_VALIDATION


def test_bare_names_go_to_output_tree(capsys, tmp_path, monkeypatch):
    from src.config import analysis_config

    monkeypatch.setattr(analysis_config, "TABLES_DIR", tmp_path / "tables")
    monkeypatch.setattr(analysis_config, "FIGURES_DIR", tmp_path / "figures")
    code, _, _ = run(capsys, "verify", "--lambda-decades", "1:2", "--out", "verify.csv", "--svg", "verify.svg")
    assert code == EXIT_OK
    assert (tmp_path / "tables" / "verify.csv").exists()
    assert (tmp_path / "figures" / "verify.svg").exists()
