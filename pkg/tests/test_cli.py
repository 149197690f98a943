import json
import subprocess
import sys

import pytest

from qosp.algebra import builtin_osp22_prs, format_algebra
from qosp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1..2")
    assert code == 0
    assert "32/32" in out


def test_verify_json_is_deterministic(capsys):
    a = run(capsys, "verify", "--n", "2", "--output", "json")[1]
    b = run(capsys, "verify", "--n", "2", "--output", "json")[1]
    assert a == b
    d = json.loads(a)
    assert d["schema"] == 1 and d["relations_passed"] == 32 and d["failures"] == []


def test_verify_perturbed_fails(capsys):
    code, out, _ = run(capsys, "verify", "--algebra", "osp22prs", "--perturb", "E22,E21:s^3")
    assert code == 1 and "FAIL [E22,E21]" in out


def test_confluence(capsys):
    code, out, _ = run(capsys, "confluence", "--output", "json")
    assert code == 0
    assert json.loads(out)["overlaps_total"] == 88
    code, out, _ = run(capsys, "confluence", "--perturb", "E11,V2:p^3")
    assert code == 1


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "--expr", "Vb1*V1")
    assert code == 0 and out.strip() == "E11 - V1*Vb1"
    code, out, _ = run(capsys, "normal-form", "--algebra", "osp22q", "--expr", "q Vb1 V1")
    assert out.strip() == "(t^2)*E11 - (t^2)*V1*Vb1"


def test_span_and_casimir(capsys):
    code, out, _ = run(capsys, "span", "--n", "1,2", "--output", "json")
    assert code == 0 and json.loads(out)["reports"][1]["saturating_length"] == 4
    code, out, _ = run(capsys, "casimir", "--n", "1..2", "--no-symbolic")
    assert code == 0 and "twisted(-q)" in out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "1", "--output", "json")
    assert code == 0 and json.loads(out)["frozen_table_matches_oracle"] is True


def test_dump_and_load_file(capsys, tmp_path):
    code, out, _ = run(capsys, "dump-algebra")
    assert out == format_algebra(builtin_osp22_prs())
    f = tmp_path / "alg.txt"
    f.write_text(out)
    code, out, _ = run(capsys, "confluence", "--algebra", str(f))
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("verify", "--algebra", "nope"),
    ("verify", "--mode", "q=x"),
    ("normal-form", "--expr", "V1 +"),
    ("confluence", "--perturb", "E11:p"),
    ("verify", "--n", "0"),
    ("span", "--mode", "symbolic"),
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("qosp:")


def test_bad_file_reports_line(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("params: p\ngenerators: A:bosonic\n[A,A]_(p = 0\n")
    code, _, err = run(capsys, "confluence", "--algebra", str(f))
    assert code == 2 and "line 3" in err


def test_step_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("QOSP_STEP_BUDGET", "1")
    code, _, err = run(capsys, "normal-form", "--expr", "Vb1 V1 Vb1")
    assert code == 1 and "exceeded" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qosp", "normal-form", "--expr", "V1 V1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "0"
