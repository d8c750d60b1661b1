"""Command-line frontend: fixtures, exit codes, JSON determinism."""

import json
import os

import pytest

from madic.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "problems")


def fx(name):
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_elkik_golden_f(capsys):
    code, out, _ = run(capsys, "elkik", fx("elkik_f.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["comparison_equal"] is True
    assert blob["member"]["z^3"] is True
    assert blob["radical_member"]["z"] is True


def test_elkik_golden_h(capsys):
    code, out, _ = run(capsys, "elkik", fx("elkik_h.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["comparison_equal"] is True
    assert blob["member"]["z^3"] is False
    assert blob["radical_member"]["z"] is True


def test_solve_certified(capsys):
    code, out, _ = run(capsys, "solve", fx("solve_basic.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["certificate"]["status"] == "certified-to-precision"


def test_solve_insufficient_residual(capsys):
    code, _, err = run(capsys, "solve", fx("solve_insufficient.madic"))
    assert code == 2
    assert "insufficient residual order" in err


def test_refine_matches_solve_on_unit_free_case(capsys):
    code, out, _ = run(capsys, "refine", fx("solve_basic.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["certificate"]["status"] == "certified-to-precision"


def test_bounds_table(capsys):
    code, out, _ = run(capsys, "bounds", fx("bounds_basic.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["report"]["elkik_degree_bound"] == "11718750003"


def test_prepare_fixture(capsys):
    code, out, _ = run(capsys, "prepare", fx("prepare_example.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["distinguished"]["r"] == 2


def test_divide_fixture(capsys):
    code, out, _ = run(capsys, "divide", fx("divide_example.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["quotient"].startswith("y")
    assert blob["remainders"][1].startswith("x")


def test_probe_fixture(capsys):
    code, out, _ = run(capsys, "probe", fx("probe_family.madic"), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["report"]["defect_count"] == 0
    assert len(blob["report"]["rows"]) == 5


def test_json_output_deterministic(capsys):
    _, a, _ = run(capsys, "solve", fx("solve_basic.madic"), "--json")
    _, b, _ = run(capsys, "solve", fx("solve_basic.madic"), "--json")
    assert a == b


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.madic"
    bad.write_text("unknown_key: 1\n")
    code, _, err = run(capsys, "solve", str(bad))
    assert code == 3
    assert "unknown key" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "solve", "/nonexistent/file.madic")
    assert code == 3


def test_human_output_has_timing(capsys):
    code, out, _ = run(capsys, "bounds", fx("bounds_basic.madic"))
    assert code == 0
    assert "elapsed:" in out


def test_field_env_var(tmp_path, capsys, monkeypatch):
    prob = tmp_path / "gf.madic"
    prob.write_text(
        "series_vars: x\n"
        "unknowns: z\n"
        "equation: z^2 - x^2\n"
        "approx: x + x^4 + O(m^12)\n"
        "target_order: 3\n"
    )
    monkeypatch.setenv("MADIC_FIELD", "GF(7)")
    code, out, _ = run(capsys, "solve", str(prob), "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["certificate"]["status"] == "certified-to-precision"


def test_duplicate_key_rejected(tmp_path, capsys):
    bad = tmp_path / "dup.madic"
    bad.write_text("precision: 4\nprecision: 5\n")
    code, _, err = run(capsys, "bounds", str(bad))
    assert code == 3
    assert "duplicate" in err
