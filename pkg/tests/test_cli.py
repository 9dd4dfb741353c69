import io
import json
import subprocess
import sys

import pytest

from surfbraid.cli import RunConfig, InputError, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_examples(capsys):
    code, out, err = run(capsys, "eval", "-n", "2", "-g", "1", "-N", "1", "s[1]^-1 s[1]^-1")
    assert code == 0 and not err
    assert out.splitlines() == ['+1 1 @ ("","" | 1 2)', '-1 t[1,2,""] @ ("","" | 1 2)']
    code, out, _ = run(capsys, "eval", "-N", "0", "")
    assert out.strip() == '+1 1 @ ("","" | 1 2)'
    code, out, _ = run(capsys, "eval", "-N", "1", "a[1,1] s[1] s[1] a[1,1]^-1")
    assert out.splitlines()[1] == '+1 t[1,2,"w1"] @ ("","" | 1 2)'


def test_eval_json_is_byte_stable(capsys):
    args = ("eval", "-n", "3", "-g", "2", "--format", "json", "a[1,3] s[1] a[2,2]^-1 s[2]")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert json.loads(first)["N"] == 3


def test_eval_singular_word_is_linear(capsys):
    code, out, _ = run(capsys, "eval", "-N", "2", "x[1] x[1]")
    assert code == 0
    assert all(line.split()[1].startswith("t[") and line.count("t[") == 2 for line in out.splitlines())


@pytest.mark.parametrize("w1,w2", [
    ("t[1,2]", ""),
    ("a[1,1] t[1,2] a[1,1]^-1", "t[1,2]"),
    ("s[1]", "s[1]^-1"),
])
def test_compare_distinguishes_at_degree_one(capsys, w1, w2):
    code, out, _ = run(capsys, "compare", "-N", "1", w1, w2)
    assert code == 0 and out.strip() == "distinguished at degree 1"


def test_compare_identical_words(capsys):
    code, out, _ = run(capsys, "compare", "-N", "3", "a[1,2] s[1]", "a[1,2] s[1]")
    assert code == 1 and out.strip() == "indistinguishable up to 3"
    code, out, _ = run(capsys, "compare", "--format", "json", "s[1]", "s[1]")
    assert json.loads(out) == {"distinguished": False, "degree": None, "N": 3}


def test_resolve(capsys):
    code, out, _ = run(capsys, "resolve", "x[1]")
    assert code == 0 and out.splitlines() == ["+1 s[1]", "-1 s[1]^-1"]
    _, out, _ = run(capsys, "resolve", "a[1,1]")
    assert out.splitlines() == ["+1 a[1,1]"]
    _, out, _ = run(capsys, "resolve", "-N", "2", "x[1] x[1]")
    lines = out.splitlines()
    assert lines[:4] == ["+1 s[1] s[1]", "-1 s[1] s[1]^-1", "-1 s[1]^-1 s[1]", "+1 s[1]^-1 s[1]^-1"]
    assert lines[4] == "u:"
    assert all(line.count("t[") == 2 for line in lines[5:])


@pytest.mark.parametrize("argv", [
    ("eval", "s[3]"),
    ("eval", "bogus"),
    ("eval", "-N", "9", "s[1]"),
    ("eval", "-g", "0", "s[1]"),
    ("compare", "s[1]", "q"),
])
def test_input_errors_exit_2_on_stderr(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


FUEL_HUNGRY = ("a[1,4] a[1,1]^-1 a[1,4] a[1,3] a[1,2] a[1,1] a[1,4]^-1 a[1,3]^-1 a[1,2]^-1 "
               "a[1,1]^-1 a[1,2]^-1 a[1,3]^-1 a[1,4]^-1 a[1,1] a[1,2] a[1,3]")


def test_pipeline_errors_exit_3():
    # a fresh process, so no memoized fillings help out
    proc = subprocess.run([sys.executable, "-m", "surfbraid", "eval", "-g", "2", "--fuel", "1", FUEL_HUNGRY],
                          capture_output=True, text=True)
    assert proc.returncode == 3 and proc.stdout == ""
    assert proc.stderr.startswith("pipeline error: FuelExhausted")


def test_word_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("s[1] s[1]\n"))
    code, out, _ = run(capsys, "eval", "-N", "1", "-")
    assert code == 0 and '+1 t[1,2,""]' in out


def test_selfcheck_quick_and_negative_control(capsys):
    code, out, _ = run(capsys, "selfcheck", "--quick", "-n", "2", "-N", "2")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "selfcheck", "--quick", "-n", "2", "-N", "2", "--corrupt-rules")
    assert code == 1 and "relations      FAIL" in out


def test_run_config_validation():
    assert RunConfig().N == 3
    with pytest.raises(InputError):
        RunConfig(n=0)
    with pytest.raises(InputError):
        RunConfig(output="yaml")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surfbraid", "compare", "-N", "1", "t[1,2]", ""],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "distinguished at degree 1"
