"""Tests for the orchestration layer and the command-line interface."""

import json
from pathlib import Path

import jsonschema
import pytest

from qsign.cli import main
from qsign.qseries import ZERO_EXCEPTIONS
from qsign.verifier import (
    PipelineConfig,
    full_pipeline,
    run_bound_sweeps,
    run_exact_oracle,
    verify_conjecture,
)

SCHEMAS = Path(__file__).resolve().parents[1] / "src/qsign/schemas"


def load_schema(name):
    return json.loads((SCHEMAS / name).read_text())


# -- verify_conjecture ----------------------------------------------------------


def test_verify_small_range():
    report = verify_conjecture(1, 60)
    assert report.passed
    assert report.zero_set_found == sorted(ZERO_EXCEPTIONS[1])
    assert report.mismatches == []
    assert report.thresholds is None  # below the closed-form threshold
    assert len(report.verdicts) == 61


def test_verify_rejects_small_n_max():
    with pytest.raises(ValueError):
        verify_conjecture(1, 49)
    with pytest.raises(ValueError):
        verify_conjecture(1, 100, threads=0)


def test_verify_threads_deterministic():
    a = verify_conjecture(-1, 80, threads=1)
    b = verify_conjecture(-1, 80, threads=3)
    assert a.verdicts == b.verdicts
    assert a.zero_set_found == b.zero_set_found


def test_signreport_schema():
    report = verify_conjecture(1, 60)
    jsonschema.validate(report.to_dict(), load_schema("signreport.schema.json"))


# -- sweeps -----------------------------------------------------------------------


def test_small_sweep_passes():
    report = run_bound_sweeps(k_max=30, n_samples=3, identity_k_max=30)
    assert report.passed
    assert report.identity_checks > 0
    assert report.negative_control_detected
    assert not report.identity_failures
    jsonschema.validate(report.to_dict(), load_schema("sweeps.schema.json"))
    rows = report.csv_rows()
    assert rows[0][0] == "k"
    assert len(rows) > 1


# -- exact oracle -----------------------------------------------------------------


def test_exact_oracle_small_range():
    report = run_exact_oracle(10, 14, deltas=(1, -1))
    assert report.oracle_passed
    assert report.rounding_matches == report.total == 10
    assert report.max_gap_plus_err < 0.5
    assert not report.all_definitive  # Weil-type certificate blocks this


# -- pipeline ---------------------------------------------------------------------


def small_config(tmp_path, name):
    return PipelineConfig(
        deltas=(1, -1),
        n_max={1: 60, -1: 60},
        sweep_k_max=20,
        identity_k_max=20,
        sweep_n_samples=2,
        exact_range=(10, 12),
        modular_prec=192,
        output_dir=tmp_path / name,
    )


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "timing"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def test_pipeline_small_and_deterministic(tmp_path):
    result1 = full_pipeline(small_config(tmp_path, "run1"))
    assert result1.exit_status == 0
    result2 = full_pipeline(small_config(tmp_path, "run2"))
    for name in ("sign_delta_1.json", "sweeps.json", "modular.json", "exact_oracle.json", "summary.json"):
        a = strip_timing(json.loads((tmp_path / "run1" / name).read_text()))
        b = strip_timing(json.loads((tmp_path / "run2" / name).read_text()))
        assert a == b, name
    # artifact schema spot checks
    jsonschema.validate(
        json.loads((tmp_path / "run1" / "sign_delta_1.json").read_text()),
        load_schema("signreport.schema.json"),
    )
    jsonschema.validate(
        json.loads((tmp_path / "run1" / "modular.json").read_text()),
        load_schema("modular.schema.json"),
    )


def test_pipeline_rejects_invalid_config(tmp_path):
    config = small_config(tmp_path, "bad")
    config.n_max = {1: 10, -1: 10}
    with pytest.raises(ValueError):
        full_pipeline(config)
    config = small_config(tmp_path, "bad2")
    config.precision_bits = 32
    with pytest.raises(ValueError):
        full_pipeline(config)


def test_pipeline_single_delta(tmp_path):
    config = small_config(tmp_path, "single")
    config.deltas = (1,)
    result = full_pipeline(config)
    assert result.exit_status == 0
    assert (tmp_path / "single" / "sign_delta_1.json").exists()
    assert not (tmp_path / "single" / "sign_delta_-1.json").exists()


# -- CLI ---------------------------------------------------------------------------


def test_cli_expand_json(capsys):
    assert main(["expand", "--delta", "1", "--order", "50"]) == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, load_schema("series.schema.json"))
    assert payload["coeffs"][47] == "0"


def test_cli_expand_minimal(capsys):
    assert main(["expand", "--delta", "1", "--order", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["coeffs"] == ["1"]


def test_cli_expand_formats(tmp_path, capsys):
    out = tmp_path / "series.csv"
    assert main(["expand", "--delta", "-1", "--order", "10", "--format", "csv",
                 "--output", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,coefficient"
    assert lines[4] == "3,0"
    assert main(["expand", "--delta", "-1", "--order", "3", "--format", "plain"]) == 0
    assert capsys.readouterr().out.split() == ["1", "1", "1", "0"]


def test_cli_expand_usage_errors(capsys):
    assert main(["expand", "--delta", "3", "--order", "5"]) == 1
    assert main(["expand", "--delta", "1", "--order", "-2"]) == 1
    assert main(["expand", "--delta", "1", "--order", "5", "--precision-bits", "32"]) == 1
    capsys.readouterr()


def test_cli_exact(capsys):
    # exit 2: data is produced but the tail certificate is not definitive
    code = main(["exact", "--delta", "1", "--n", "47"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 2
    assert payload["rounded"] == 0
    assert payload["definitive"] is False
    jsonschema.validate(payload, load_schema("exact.schema.json"))


def test_cli_exact_domain_error(capsys):
    assert main(["exact", "--delta", "-1", "--n", "1"]) == 1
    assert "n >= 2" in capsys.readouterr().err


def test_cli_verify(capsys):
    assert main(["verify", "--delta", "1", "--n-max", "60"]) == 0
    out = capsys.readouterr()
    payload = json.loads(out.out)
    assert payload["pass"] is True
    assert "PASS" in out.err


def test_cli_verify_usage(capsys):
    assert main(["verify", "--delta", "1", "--n-max", "10"]) == 1
    capsys.readouterr()


def test_cli_threshold(capsys):
    assert main(["threshold", "--delta", "1", "--n", "2929"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    # at least 10 significant digits are printed
    assert "0.998718959" in out
    assert main(["threshold", "--delta", "-1", "--n", "2234"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_threshold_fail_exit(capsys):
    assert main(["threshold", "--delta", "1", "--n", "100"]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_cli_sweeps(capsys):
    assert main(["sweeps", "--k-max", "20", "--identity-k-max", "20", "--n-samples", "2"]) == 0
    out = capsys.readouterr()
    assert json.loads(out.out)["pass"] is True


def test_cli_missing_subcommand(capsys):
    assert main([]) == 1
    capsys.readouterr()


def test_cli_env_precision(monkeypatch, capsys):
    monkeypatch.setenv("QSIGN_PRECISION_BITS", "32")
    assert main(["expand", "--delta", "1", "--order", "5"]) == 1
    monkeypatch.setenv("QSIGN_PRECISION_BITS", "96")
    assert main(["expand", "--delta", "1", "--order", "5"]) == 0
    capsys.readouterr()
