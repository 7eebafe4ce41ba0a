import json

import pytest

from jordouble.cli import EXIT_INVARIANT, EXIT_OK, EXIT_RELIABILITY, EXIT_USAGE, RunConfig, UsageError, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_dims_r_value_set(capsys):
    code, out = run(capsys, "dims", "--example", "R", "--D", "12")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["schema_version"] == 1
    assert {t["dim"] for t in doc["totals"][2:]} <= {2, 3, 4}


def test_dims_jor_zeros_at_multiples_of_three(capsys):
    code, out = run(capsys, "dims", "--example", "JorR", "--D", "12")
    totals = [t["dim"] for t in json.loads(out)["totals"]]
    assert code == EXIT_OK and all(totals[n] == 0 for n in (3, 6, 9, 12))


@pytest.mark.parametrize("argv", [["dims", "--example", "R", "--D", "0"], ["dims", "--example", "nope"],
                                  ["dims", "--field", "F4"], ["growth", "--example", "R", "--D", "6",
                                                               "--window", "1", "3"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_argparse_usage_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--format", "yaml"])
    assert exc.value.code == EXIT_USAGE


def test_reliability_failure_exit(capsys):
    code, out = run(capsys, "dims", "--example", "R", "--N", "6", "--D", "16")
    assert code == EXIT_RELIABILITY
    assert any(not c["reliable"] for c in json.loads(out)["components"])


def test_verify_kan_h2_jordan(capsys):
    code, out = run(capsys, "verify", "--example", "KanH2", "--suite", "jordan", "--seed", "7")
    doc = json.loads(out)
    assert code == EXIT_OK and [r["verdict"] for r in doc["reports"]] == ["holds", "holds-on-sample"]


def test_verify_recursion(capsys):
    code, out = run(capsys, "verify", "--suite", "recursion")
    assert code == EXIT_OK and json.loads(out)["holds"]


@pytest.mark.parametrize("example,suite", [("KanH1", "jordan"), ("H1", "poisson"), ("H2", "lie"),
                                           ("R", "lie"), ("JorR", "nil")])
def test_corrupted_negative_control(capsys, example, suite):
    code, _ = run(capsys, "verify", "--example", example, "--suite", suite, "--corrupt", "--D", "6"
                  if example in ("R", "JorR") else "4" if example == "H2" else "2")
    assert code == EXIT_INVARIANT


def test_verify_unknown_suite(capsys):
    assert main(["verify", "--suite", "nope"]) == EXIT_USAGE


def test_series_r_diff_zero(capsys):
    code, out = run(capsys, "series", "--example", "R", "--D", "10", "--bivariate")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["diff"] == "0" and doc["bivariate"]["diff"] == "0"


def test_growth_and_catalog(capsys):
    code, out = run(capsys, "growth", "--example", "AR", "--D", "8", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[0] == "n,dim,gamma"
    code, out = run(capsys, "catalog", "list")
    assert code == EXIT_OK and out.startswith("R ")


def test_output_is_byte_identical_and_env_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("JORDOUBLE_OUT", str(tmp_path))
    argv = ["verify", "--example", "JorR", "--D", "20", "--suite", "jordan", "--seed", "3", "--samples", "50"]
    assert main(argv) == EXIT_OK
    first = (tmp_path / "verify-JorR-jordan.json").read_bytes()
    assert main(argv) == EXIT_OK
    assert (tmp_path / "verify-JorR-jordan.json").read_bytes() == first
    out = tmp_path / "sub" / "t.csv"
    assert main(["dims", "--example", "Q", "--D", "5", "--format", "csv", "--out", str(out)]) == EXIT_OK
    assert out.read_text().startswith("deg,total,dim,reliable")


def test_run_config_validation_fills_defaults():
    cfg = RunConfig("JorR").validate()
    assert (cfg.N, cfg.D) == (24, 59)
    with pytest.raises(UsageError):
        RunConfig("R", format="xml").validate()
