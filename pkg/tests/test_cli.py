import json
import subprocess
import sys

import pytest

from rrverify.cli import main

from corpus import SAMPLES


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_verify_example2(capsys):
    code, rep, _ = run(capsys, "verify", "example2")
    assert code == 0 and rep["abs_states"] == 3 and rep["result"] == "safe"


def test_verify_unbounded_ticket_lock(capsys):
    code, rep, _ = run(capsys, "verify-unbounded", "ticket-lock", "--max-n", "6")
    assert code == 0 and rep["abs_states"] == 4 and rep["n_plateau_at"] == 3


def test_tester_no_bug_within_one_delay(capsys):
    code, rep, _ = run(capsys, "test", "example2", "--error", "shared=2", "--max-d", "1")
    assert code == 2 and rep["reason"] == "no-bug-within-bounds"


def test_tester_finds_bug(capsys):
    code, rep, _ = run(capsys, "test", "example2", "--error", "shared=2")
    assert code == 1 and rep["d_max"] == 2 and rep["witness"][-1]["thread"] == 2


def test_verify_violation_from_file(capsys):
    code, rep, _ = run(capsys, "verify", str(SAMPLES / "example2.async"))
    assert code == 1 and rep["witness"][-1]["state"][0] == 2


def test_unknown_exit(capsys):
    code, rep, _ = run(capsys, "verify", "program-p", "--abstraction", "alpha1")
    assert code == 2 and rep["reason"] == "not-closed"
    assert rep["counterexample"] == [[1, 0], "if", 0, [2, 0]]


def test_cpds_file(capsys):
    code, rep, _ = run(capsys, "verify", str(SAMPLES / "recursion.cpds"), "--error", "shared=2")
    assert code == 0


def test_compare_table(capsys):
    code, rep, err = run(capsys, "compare", "example2")
    assert code == 0
    e = rep["engines"]
    assert e["frontier"]["image_calls"] < e["naive"]["image_calls"]
    assert "eager-closure" in err


def test_oracle(capsys):
    code, rep, _ = run(capsys, "oracle", "example3", "--n", "2")
    assert code == 0 and rep["concrete_states"] == 18


def test_oracle_cap(capsys):
    code, rep, _ = run(capsys, "oracle", "ticket-lock", "--max-states", "10")
    assert code == 2 and rep["reason"] == "max-states"


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "verify", "example2", "--out", str(out))
    assert json.loads(out.read_text())["result"] == "safe"


@pytest.mark.parametrize("args", [
    ["verify", "no-such-model"],
    ["verify", "program-p", "--abstraction", "alpha7"],
    ["verify", "ticket-lock", "--error", "shared=1"],
    ["verify", "example2", "--max-r", "-1"],
    ["verify", "example2", "--error", "2"],
    ["verify-unbounded", str(SAMPLES / "handoff.async")],
    ["verify-unbounded", "ticket-lock", "--min-n", "5", "--max-n", "3"],
    ["explode", "example2"],
    [],
])
def test_usage_errors(capsys, args):
    # argparse errors exit through SystemExit, configuration errors return
    try:
        code = main(args)
    except SystemExit as e:
        code = e.code
    assert code == 3


def test_parse_error_reports_line(capsys, tmp_path):
    f = tmp_path / "bad.async"
    f.write_text("async\nshared 2\ninit 0\nthread A copies 1\n locals 1\n linit 0\n wat\nend\n")
    code, _, err = run(capsys, "verify", str(f))
    assert code == 3 and "line 7" in err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "rrverify", "verify", "example2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["abs_states"] == 3
