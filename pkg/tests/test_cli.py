import json
import subprocess
import sys

import pytest

from vfmontesinos.cli import main, parse_range, parse_set, sweep


def run_main(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_json_pass(capsys):
    code, out, _ = run_main(capsys, "check", "(1/5,1/5,1/5)", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "PASS"


def test_check_text(capsys):
    code, out, _ = run_main(capsys, "check", "(1/5, 1/5, 1/5)")
    assert code == 0
    assert "verdict: PASS" in out and "e~ = -3" in out
    assert "\033[" not in out  # not a tty


def test_check_even_p(capsys):
    code, out, _ = run_main(capsys, "check", "(1/4,1/4,1/4)")
    assert code == 1 and "p even" in out


def test_check_malformed(capsys):
    code, _, err = run_main(capsys, "check", "(1/5,1/5")
    assert code == 3 and "column" in err


def test_check_dot_not_applicable(capsys):
    code, _, _ = run_main(capsys, "check", "(1/3,1/3,1/3)", "--dot", "f1")
    assert code == 1


def test_json_deterministic(capsys):
    _, a, _ = run_main(capsys, "check", "(1/5,1/5,1/5)", "--json")
    _, b, _ = run_main(capsys, "check", "(1/5,1/5,1/5)", "--json")
    assert a == b


def test_out_file(tmp_path, capsys):
    target = tmp_path / "cert.json"
    code, out, _ = run_main(capsys, "check", "(1/7,1/7,1/7)", "--json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "PASS"


def test_out_unwritable(tmp_path, capsys):
    code, _, err = run_main(capsys, "check", "(1/5,1/5,1/5)", "--out", str(tmp_path / "no" / "such" / "f"))
    assert code == 4 and "i/o" in err


# -- batch -----------------------------------------------------------------------

def test_batch_all_pass(capsys):
    code, out, _ = run_main(capsys, "batch", "--p", "5..7", "--n", "3", "--q", "1,2", "--json")
    rows = json.loads(out)
    assert code == 0
    assert len(rows) == 16 and all(r["verdict"] == "PASS" for r in rows)


def test_batch_order(capsys):
    _, out, _ = run_main(capsys, "batch", "--p", "3..7", "--n", "3..4", "--q", "1,2", "--json")
    rows = json.loads(out)
    keys = [(int(r["p"]), int(r["n"]), r["input"]) for r in rows]
    assert [k[:2] for k in keys] == sorted(k[:2] for k in keys)
    assert {k[0] for k in keys} == {3, 5, 7}


def test_batch_p3_not_applicable(capsys):
    code, out, _ = run_main(capsys, "batch", "--p", "3", "--n", "3", "--q", "-2..2", "--json")
    rows = json.loads(out)
    assert code == 0 and rows and all(r["verdict"] == "NotApplicable" for r in rows)


def test_batch_empty(capsys):
    code, out, _ = run_main(capsys, "batch", "--p", "4", "--q", "1")
    assert code == 0 and "0 rows" in out
    code, out, _ = run_main(capsys, "batch", "--p", "5", "--q", "{}", "--json")
    assert code == 0 and json.loads(out) == []


def test_batch_jobs_same_output(capsys):
    _, a, _ = run_main(capsys, "batch", "--p", "5", "--q", "1,2", "--json")
    _, b, _ = run_main(capsys, "batch", "--p", "5", "--q", "1,2", "--json", "--jobs", "2")
    assert a == b


def test_bad_range(capsys):
    code, _, err = run_main(capsys, "batch", "--p", "a..b", "--q", "1")
    assert code == 3


def test_parse_helpers():
    assert parse_range("3..7") == (3, 7) and parse_range("5") == (5, 5)
    assert parse_set("{1, 2}") == (1, 2)
    assert parse_set("-2..2") == (-2, -1, 0, 1, 2)
    assert parse_set("2,1,2") == (1, 2)
    assert sweep((5, 5), (3, 3), ()) == []
    assert len(sweep((4, 6), (3, 3), (1,))) == 1


# -- DOT -------------------------------------------------------------------------

def test_cover_dot(capsys):
    code, out, _ = run_main(capsys, "cover-dot", "(1/5,1/5,1/5)", "--which", "incidence")
    assert code == 0 and out.startswith("graph incidence")


def test_jsj_dot(capsys):
    code, out, _ = run_main(capsys, "jsj-dot", "(1/5,1/5,1/5)", "--doubled")
    assert code == 0 and out.startswith("graph Mbreve") and out.count(" -- ") == 20


def test_check_dot_jsj(capsys):
    code, out, _ = run_main(capsys, "check", "(1/5,1/5,1/5)", "--dot", "jsj")
    assert code == 0 and out.count(" -- ") == 10


def test_module_entry_point_no_color():
    env = {"NO_COLOR": "1", "PATH": ""}
    proc = subprocess.run(
        [sys.executable, "-m", "vfmontesinos", "check", "(1/4,1/4,1/4)"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 1 and "\033[" not in proc.stdout


def test_usage_error_is_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["batch", "--q", "1"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3
