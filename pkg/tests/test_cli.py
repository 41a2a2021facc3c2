import io
import json
import subprocess
import sys

import pytest

from kqsets.analysis import FunctionTable
from kqsets.cli import main
from kqsets.kronecker import build_level_matrix
from kqsets.modmatrix import from_text
from kqsets.tables import TableFormatError, format_table, parse_table

M8_TEXT = """q 7 8 8
1 1 1 1 1 1 1 1
0 1 0 1 0 1 0 1
0 0 1 0 0 0 1 0
0 0 0 1 0 0 0 1
0 0 0 0 1 0 0 0
0 0 0 0 0 1 0 0
0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 1
"""


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_build_m2():
    code, out = run("build", "--q", "2", "--level", "1")
    assert code == 0
    assert out == "q 2 2 2\n1 1\n0 1\n"


def test_build_m8_roundtrip():
    code, out = run("build", "--q", "7", "--level", "3")
    assert code == 0 and out == M8_TEXT
    assert from_text(out).to_text() == out


def test_build_json_schema():
    code, out = run("build", "--q", "3", "--level", "1", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload == {"modulus": 3, "rows": 2, "cols": 2, "entries": [[1, 1], [0, 1]]}


def test_build_rejects_q1(capsys):
    code, _ = run("build", "--q", "1", "--level", "1")
    assert code == 2
    assert "modulus must be at least 2" in capsys.readouterr().err


def test_build_rejects_huge_level(capsys):
    assert run("build", "--q", "2", "--level", "20")[0] == 2


def test_verify_fast_both():
    code, out = run("verify", "--q", "6", "--level", "2", "--property", "both", "--mode", "fast")
    assert code == 0
    assert "kq [fast]: pass" in out and "gen [fast]: pass" in out


def test_verify_exhaustive_kq():
    code, out = run("verify", "--q", "4", "--level", "2", "--property", "kq", "--mode", "exhaustive")
    assert code == 0
    assert "256 functions checked" in out


def test_verify_closure_gen():
    code, out = run("verify", "--q", "2", "--level", "1", "--property", "gen", "--mode", "closure")
    assert code == 0
    assert "subgroup size 4 of 4" in out


def test_verify_json():
    code, out = run("verify", "--q", "3", "--level", "1", "--mode", "exhaustive", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    for rep in payload["reports"]:
        assert set(rep) == {"property", "mode", "pass", "details"}
        assert rep["pass"] is True


def test_verify_budget_is_usage_error(capsys):
    code, _ = run("verify", "--q", "6", "--level", "3", "--property", "kq", "--mode", "exhaustive")
    assert code == 2
    assert "budget" in capsys.readouterr().err


def test_verify_budget_env_and_flag(monkeypatch):
    monkeypatch.setenv("KQSETS_TABLE_BUDGET", "10")
    args = ("verify", "--q", "2", "--level", "2", "--property", "kq", "--mode", "exhaustive")
    assert run(*args)[0] == 2
    assert run(*args, "--table-budget", "16")[0] == 0


def write(tmp_path, text):
    p = tmp_path / "table.txt"
    p.write_text(text)
    return str(p)


def test_interpolate_m2(tmp_path):
    path = write(tmp_path, "q 2 level 1\n1 0 -> 1\n1 1 -> 0\n")
    code, out = run("interpolate", "--table", path)
    assert code == 0
    assert "c = (1, 1)" in out and "all match" in out


def test_interpolate_zero_table(tmp_path):
    path = write(tmp_path, "q 5 level 1\n1 0 -> 0\n1 1 -> 0\n")
    code, out = run("interpolate", "--table", path, "--format", "json")
    assert code == 0
    assert json.loads(out)["coeffs"] == [0, 0]


def test_interpolate_not_total(tmp_path, capsys):
    path = write(tmp_path, "q 2 level 1\n1 0 -> 1\n")
    assert run("interpolate", "--table", path)[0] == 2
    assert "table not total" in capsys.readouterr().err


def test_interpolate_level_mismatch(tmp_path):
    path = write(tmp_path, "q 2 level 1\n1 0 -> 1\n1 1 -> 0\n")
    assert run("interpolate", "--table", path, "--level", "2")[0] == 2


def test_witness_examples():
    code, out = run("witness", "--q", "2", "--level", "1", "--target", "0,1")
    assert code == 0
    assert "alpha       = (1, 1)" in out and "combination = (0, 1)" in out
    code, out = run("witness", "--q", "5", "--level", "2", "--target", "0,0,0,0")
    assert code == 0 and "alpha       = (0, 0, 0, 0)" in out
    code, out = run("witness", "--q", "6", "--level", "3", "--target", "5,4,3", "--format", "json")
    assert code == 0
    assert json.loads(out)["combination"] == [5, 4, 3, 0, 0, 0, 0, 0]


def test_witness_target_too_long():
    assert run("witness", "--q", "2", "--level", "1", "--target", "1,0,1")[0] == 2


def test_example1():
    code, out = run("example1", "--q", "3", "--n", "2")
    assert code == 0
    assert "left inverse: none" in out and "right inverse: exists" in out
    code, out = run("example1", "--q", "2", "--n", "1")
    assert out.startswith("q 2 1 2\n1 0\n")
    code, out = run("example1", "--q", "2", "--n", "2", "--census")
    assert "4 of 8 tables solvable (exactly those with f(0)=0)" in out


def test_missing_flag_is_usage_error():
    assert run("build", "--q", "2")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "kqsets", "build", "--q", "2", "--level", "1"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert res.stdout == "q 2 2 2\n1 1\n0 1\n"


# -- table format -----------------------------------------------------------

def test_table_roundtrip():
    lm = build_level_matrix(3, 2)
    f = FunctionTable.from_columns(lm.columns(), [2, 0, 1, 1])
    text = format_table(3, 2, f)
    q, level, g = parse_table(text)
    assert (q, level) == (3, 2) and g == f


@pytest.mark.parametrize("text", [
    "",
    "q 2 lvl 1\n",
    "q 2 level 1\n1 0 1\n1 1 -> 0\n",
    "q 2 level 1\n1 0 -> 1\n1 0 -> 0\n",
    "q 2 level 1\n0 0 -> 1\n1 1 -> 0\n",
    "q 2 level 1\n1 0 -> 5\n1 1 -> 0\n",
])
def test_table_rejects_malformed(text):
    with pytest.raises(TableFormatError):
        parse_table(text)
