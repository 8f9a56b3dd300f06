import json
import subprocess
import sys

import pytest

from qschur.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

WITNESS = "diag(0,1) + 1*E^{1,3}"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mult(capsys):
    code, out, _ = run(capsys, "mult", "--word", "E1", "-a", "0,1")
    assert code == EXIT_OK
    assert out.strip() == "(1*v^0) [diag(0,0) + 1*E^{1,2}]"


def test_mult_empty_word_and_json(capsys):
    code, out, _ = run(capsys, "mult", "--word", "", "-a", "2,1", "--json")
    assert code == EXIT_OK
    res = json.loads(out)["result"]
    assert res["D"] == 3 and len(res["terms"]) == 1


def test_mult_word_file(capsys, tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("E1   # first symbol\nE2\n")
    code, out, _ = run(capsys, "mult", "--word-file", str(f), "-a", "1,1")
    assert code == EXIT_OK
    assert "(1*v^-1) [diag(0,0) + 1*E^{1,2} + 1*E^{2,3}]" in out
    f.write_text("E1\nE2 Q3\n")
    code, _, err = run(capsys, "mult", "--word-file", str(f), "-a", "1,1")
    assert code == EXIT_USAGE and "line 2, column 4" in err


def test_bad_word_is_a_usage_error(capsys):
    code, _, err = run(capsys, "mult", "--word", "E1 X", "-a", "0,1")
    assert code == EXIT_USAGE and "column 4" in err
    code, _, _ = run(capsys, "mult", "--word", "E1", "-a", "0,1", "--D", "5")
    assert code == EXIT_USAGE


def test_inner(capsys):
    code, out, _ = run(capsys, "inner", "--w1", "F1", "--a1", "2,0", "--w2", "F1", "--a2", "2,0")
    assert code == EXIT_OK and out.strip() == "1*v^0 + 1*v^-2"
    code, _, _ = run(capsys, "inner", "--w1", "F1", "--a1", "2,0", "--w2", "F1", "--a2", "2,1")
    assert code == EXIT_USAGE


def test_inner_limit(capsys):
    code, out, _ = run(capsys, "inner-limit", "--w1", "F1", "--lam1", "1,0", "--w2", "F1", "--lam2", "1,0", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == "(1*v^2) / (1*v^2 + -1*v^0)"


def test_canon(capsys):
    code, out, _ = run(capsys, "canon", "-A", WITNESS, "--json")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert all(obj["checks"].values())
    assert len(obj["expansion"]["terms"]) == 2
    code, out, _ = run(capsys, "canon", "-A", WITNESS, "--stable")
    assert code == EXIT_OK and "E1 E2" in out
    code, _, _ = run(capsys, "canon", "-A", "diag(0,0) + 1*E^{1,2} + 1*E^{2,3}")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "canon", "-A", "not a matrix")
    assert code == EXIT_USAGE


def test_canon_cold_and_warm_cache_agree(tmp_path):
    cmd = [sys.executable, "-m", "qschur.cli", "canon", "-A", WITNESS, "--json", "--cache-dir", str(tmp_path)]
    cold = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert any(tmp_path.iterdir())
    warm = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert cold == warm


def test_oracle_count_and_budget(capsys):
    code, out, _ = run(capsys, "oracle", "count", "-A", "diag(1,0) + 1*E^{1,2}", "--q", "2")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["count"] == 3 and obj["budget_used"] > 0
    code, _, err = run(capsys, "--budget", "2", "oracle", "count", "-A", "diag(2,0) + 1*E^{1,2}", "--q", "3")
    assert code == EXIT_BUDGET and "budget" in err
    code, _, _ = run(capsys, "oracle", "count", "-A", "diag(1,0) + 1*E^{1,2}", "--q", "6")
    assert code == EXIT_USAGE


def test_oracle_window_too_small(capsys):
    code, _, err = run(capsys, "oracle", "count", "-A", "diag(0,0) + 1*E^{1,4} + 1*E^{2,1}", "--window", "1")
    assert code == EXIT_FAIL and "WindowTooSmall" in err


def test_oracle_struct(capsys):
    code, out, _ = run(capsys, "oracle", "struct", "-A", "diag(1,1)", "-B", "diag(1,1)", "-C", "diag(1,1)")
    assert code == EXIT_OK and json.loads(out)["structure_constant"] == 1


def test_verify_one_suite(capsys):
    code, out, _ = run(capsys, "verify", "A4")
    assert code == EXIT_OK and out.startswith("A4 PASS")


def test_bad_config_is_a_usage_error(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"nonsense": 1}')
    code, _, err = run(capsys, "--config", str(cfg), "verify", "A4")
    assert code == EXIT_USAGE and "unknown config keys" in err


def test_missing_subcommand_exits_with_usage():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
