"""End-to-end CLI tests: output formats, exit codes, determinism."""

import io
import json
import os
from contextlib import redirect_stdout, redirect_stderr

import pytest

from cyclodiv import cli


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        rc = cli.main(argv)
    return rc, out.getvalue(), err.getvalue()


def test_h_both_methods_agree():
    rc, out, _ = run_cli(["h", "--r", "1", "--n", "6", "--method", "both", "--witness"])
    assert rc == 0
    data = json.loads(out)
    assert data["value"] == "2"
    assert data["agree"] is True
    assert data["witness"] == [2, 3]
    assert data["method"] == "both"


def test_h_value_is_decimal_string():
    rc, out, _ = run_cli(["h", "--r", "2", "--n", "9699690"])
    assert rc == 0
    data = json.loads(out)
    assert isinstance(data["value"], str)
    assert data["value"].isdigit()
    assert "witness" not in data


def test_cyclotomic_full_json():
    rc, out, _ = run_cli(["cyclotomic", "105"])
    assert rc == 0
    data = json.loads(out)
    assert data["degree"] == 48
    assert data["coefficients"][7] == -2


def test_cyclotomic_truncated_and_csv():
    rc, out, _ = run_cli(["cyclotomic", "6", "--order", "3"])
    assert rc == 0
    assert json.loads(out)["coefficients"] == [1, -1, 1, 0]
    rc, out, _ = run_cli(["cyclotomic", "6", "--order", "3", "--format", "csv"])
    assert rc == 0
    assert out.splitlines() == ["i,coefficient", "0,1", "1,-1", "2,1", "3,0"]


def test_constant_json():
    rc, out, _ = run_cli(["constant", "--r", "1", "--prime-limit", "10000"])
    assert rc == 0
    data = json.loads(out)
    assert set(data) == {"r", "kind", "value", "tail_bound", "prime_limit"}
    assert abs(data["value"] - 0.6079271019) <= data["tail_bound"]
    assert data["prime_limit"] == 10000


def test_constant_c_kind():
    rc, out, _ = run_cli(["constant", "--r", "1", "--prime-limit", "10000", "--kind", "c_of_r"])
    data = json.loads(out)
    assert abs(data["value"] - 0.3039635509) <= data["tail_bound"]


def test_sums_csv_format():
    rc, out, _ = run_cli(["sums", "--r", "1", "--kind", "nu", "--checkpoints", "10", "100"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "x,sum,leading,ratio"
    assert lines[1].startswith("10,23,")
    assert lines[2].startswith("100,359,")
    assert out.endswith("\n") and "\r" not in out


def test_sums_single_x_and_json():
    rc, out, _ = run_cli(["sums", "--r", "1", "--kind", "h", "--x", "10", "--format", "json"])
    assert rc == 0
    data = json.loads(out)
    assert data["rows"] == [
        {
            "x": 10,
            "sum": "12",
            "leading": pytest.approx(data["rows"][0]["leading"]),
            "ratio": pytest.approx(data["rows"][0]["ratio"]),
        }
    ]
    assert data["rows"][0]["sum"] == "12"


def test_sums_x_and_checkpoints_mutually_exclusive():
    rc, _, err = run_cli(["sums", "--r", "1", "--kind", "nu", "--x", "10", "--checkpoints", "10"])
    assert rc == 1
    assert "error" in err.lower()


def test_verify_summary_lines():
    rc, out, _ = run_cli(["verify", "--r", "2", "--n-max", "500"])
    assert rc == 0
    lines = out.splitlines()
    assert "sandwich holds: 499/499" in lines
    assert any(line.startswith("oracle agreement (r=2):") for line in lines)
    assert any(line.startswith("closed form H(1,n) = 2^(nu(n)-1): 499/499") for line in lines)
    assert any(line.startswith("product domination (seed 0): 1000/1000") for line in lines)
    assert lines[-1] == "verify: PASS"


def test_verify_deterministic_across_jobs():
    rc1, out1, _ = run_cli(["verify", "--r", "2", "--n-max", "150", "--jobs", "1"])
    rc8, out8, _ = run_cli(["verify", "--r", "2", "--n-max", "150", "--jobs", "8"])
    assert rc1 == rc8 == 0
    assert out1 == out8


def test_sums_deterministic_across_jobs():
    argv = ["sums", "--r", "2", "--kind", "h", "--checkpoints", "40", "80", "160"]
    rc1, out1, _ = run_cli(argv + ["--jobs", "1"])
    rc8, out8, _ = run_cli(argv + ["--jobs", "8"])
    assert rc1 == rc8 == 0
    assert out1 == out8


def test_report_writes_csv_and_figure(tmp_path):
    rc, out, _ = run_cli(
        ["report", "--r", "1", "--checkpoints", "10", "100", "500", "--out-dir", str(tmp_path)]
    )
    assert rc == 0
    names = sorted(os.listdir(tmp_path))
    assert names == ["report_r1.png", "report_r1_h.csv", "report_r1_nu.csv"]
    nu_csv = (tmp_path / "report_r1_nu.csv").read_text()
    lines = nu_csv.splitlines()
    assert lines[0] == "x,sum,leading,ratio"
    assert len(lines) == 4
    assert (tmp_path / "report_r1.png").stat().st_size > 1000
    assert str(tmp_path / "report_r1.png") in out


def test_exit_code_usage_errors():
    rc, _, err = run_cli(["h", "--r", "0", "--n", "6"])
    assert rc == 1 and "r" in err
    rc, _, _ = run_cli(["definitely-not-a-command"])
    assert rc == 1
    rc, _, err = run_cli(["verify", "--r", "1", "--n-max", "1"])
    assert rc == 1


def test_exit_code_cap_errors():
    rc, _, err = run_cli(["h", "--r", "1", "--n", "720720", "--method", "brute"])
    assert rc == 2
    assert "tau(720720) = 240" in err
    rc, _, err = run_cli(["h", "--r", "4", "--n", "2310", "--reachable-cap", "10"])
    assert rc == 2
    assert "reachable" in err


def test_env_var_cap_override(monkeypatch):
    monkeypatch.setenv(cli.ENV_TAU_CAP, "5")
    rc, _, err = run_cli(["h", "--r", "1", "--n", "12", "--method", "brute"])
    assert rc == 2
    assert "tau(12) = 6" in err
    # explicit flag wins over the environment
    rc, _, _ = run_cli(["h", "--r", "1", "--n", "12", "--method", "brute", "--tau-cap", "6"])
    assert rc == 0


def test_witness_flag_on_fast_method():
    rc, out, _ = run_cli(["h", "--r", "2", "--n", "30", "--witness"])
    assert rc == 0
    data = json.loads(out)
    from cyclodiv.hmax import divisor_subset_poly

    poly = divisor_subset_poly(data["witness"], 30, 2)
    assert abs(poly.coeffs[2]) == int(data["value"])
