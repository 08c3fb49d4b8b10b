import json
import subprocess
import sys

import pytest

from ghostcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_all_sl2(capsys):
    code, out, _ = run(capsys, "check", "--all", "corpus:sl2")
    assert code == 0 and "overall: PASS" in out


def test_check_nilpotent_corrupted(capsys):
    code, out, _ = run(capsys, "check", "--nilpotent", "corpus:sl2-corrupted")
    assert code == 1
    assert "eta^e*eta^h*eta^f" in out


def test_check_ga(capsys):
    assert run(capsys, "check", "--ga", "corpus:dual-numbers")[0] == 0
    assert run(capsys, "check", "--ga", "corpus:nonassociative-m2")[0] == 1


def test_incompatible_flags(capsys):
    assert run(capsys, "check", "--all", "--cl", "corpus:sl2")[0] == 2
    assert run(capsys, "check", "--ga", "corpus:sl2")[0] == 2
    assert run(capsys, "check", "--rep", "corpus:nonassociative-m2")[0] == 2
    assert run(capsys, "check", "corpus:sl2")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_bad_file(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"format_version": 1, "field": "Q", "generators": ["a", "b"],
                             "brackets": [{"inputs": ["a", "b"], "output": {"a": "1/0"}}]}))
    code, _, err = run(capsys, "check", "--all", str(p))
    assert code == 2 and "brackets[0].output.a" in err
    assert run(capsys, "check", "--all", str(tmp_path / "nope.json"))[0] == 2
    assert run(capsys, "check", "--all", "corpus:nope")[0] == 2


def test_differential_routes(capsys):
    code, out, _ = run(capsys, "differential", "--k", "2", "--cochain", "theta_h", "--route", "both", "corpus:sl2")
    assert code == 0 and "(e,f) -> [-1]" in out and "PASS" in out
    code, out, _ = run(capsys, "differential", "--cochain", "theta_w", "--route", "ghost", "corpus:graded-standard")
    assert code == 0
    assert run(capsys, "differential", "--cochain", "nope", "corpus:sl2")[0] == 2


def test_cohomology_command(capsys):
    code, out, _ = run(capsys, "cohomology", "--max-degree", "3", "corpus:sl2")
    assert code == 0
    last = out.strip().splitlines()[-1].split()
    assert last == ["3", "1", "0", "1"]
    code, out, _ = run(capsys, "cohomology", "--max-degree", "2", "corpus:sl2-corrupted")
    assert code == 1 and "refused" in out


def test_correspond_command(capsys):
    code, out, _ = run(capsys, "correspond", "--max-arity", "2", "corpus:heisenberg-3")
    assert code == 0 and out.strip().endswith("correspondence: PASS")


def test_json_emit_and_determinism(capsys):
    a = run(capsys, "--emit", "json", "check", "--all", "corpus:sl2-corrupted")
    b = run(capsys, "check", "--all", "--emit", "json", "corpus:sl2-corrupted")
    assert a == b
    data = json.loads(a[1])
    assert data["passed"] is False
    assert data["checks"][0]["detail"]["violations"]


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and "sl2" in out.split()


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "ghostcalc.cli", "check", "--all", "corpus:sl2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
