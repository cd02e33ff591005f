import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from kittideal import Ideal
from kittideal import gbengine as gb
from kittideal.cli import load_problem, main

ROOT = Path(__file__).resolve().parents[1]
PROBLEMS = ROOT / "docs" / "problems"
PROBLEM_SCHEMA = json.loads((ROOT / "docs" / "problem.schema.json").read_text())
RESULT_SCHEMA = json.loads((ROOT / "docs" / "result.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, RESULT_SCHEMA)
    return code, doc


def write(tmp_path, doc, name="p.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc, indent=1))
    return path


@pytest.mark.parametrize("name", sorted(p.name for p in PROBLEMS.glob("*.json")))
def test_shipped_problems_match_schema(name):
    jsonschema.validate(json.loads((PROBLEMS / name).read_text()), PROBLEM_SCHEMA)


def test_verify_on_gf3_example(capsys):
    code, doc = run_json(capsys, "verify", PROBLEMS / "gf3_example.json")
    assert code == 0
    r = doc["result"]
    assert r["kitt_equals_colon"] is False
    assert r["height_J"] == 2
    assert r["boundary_lemma"] and r["homology_cross_check"]


def test_expect_equal_fails_with_code_two(capsys):
    code, doc = run_json(capsys, "verify", PROBLEMS / "gf3_example.json", "--expect-equal")
    assert code == 2
    assert "kitt_equals_colon" in doc["result"]["failed_checks"]


def test_kitt_of_squares(capsys):
    code, doc = run_json(capsys, "kitt", PROBLEMS / "xy_squares.json")
    assert code == 0
    assert doc["result"]["kitt"]["gb"] == ["x^2", "x*y", "y^2"]
    assert all(t["L1"] and min(t["L1"]) >= 1 for t in doc["result"]["provenance"] if t["L1"])


def test_en_ranks(capsys):
    code, doc = run_json(capsys, "en", PROBLEMS / "generic_2x3.json", "--d", 0)
    assert code == 0
    assert doc["result"]["ranks_right_to_left"] == [1, 3, 2]
    assert doc["result"]["composition_zero"] is True
    assert doc["result"]["homology_vanishes"] == [True, True]


def test_lift_with_and_without_witness(capsys):
    code, doc = run_json(capsys, "lift", PROBLEMS / "generic_2x3.json", "--d", 0,
                         "--witness", '{"e1^e2": "1", "e2^e3": "a"}')
    assert code == 0
    assert doc["result"]["results"][0]["lift_verified"] is True
    code, doc = run_json(capsys, "lift", PROBLEMS / "generic_2x3.json", "--d", 1, "--seed", 5)
    assert code == 0
    assert len(doc["result"]["results"]) == 3


def test_colon_fitt_koszul_specialize(capsys):
    code, doc = run_json(capsys, "colon", PROBLEMS / "xy_squares.json")
    assert code == 0 and doc["result"]["colon"]["gb"] == ["x^2", "x*y", "y^2"]
    code, doc = run_json(capsys, "fitt", PROBLEMS / "gf3_example.json")
    assert code == 0 and doc["result"]["fitting"]["gb"]
    code, doc = run_json(capsys, "koszul", PROBLEMS / "gf3_example.json", "--homology", 1, "--cycles", 1)
    assert code == 0 and doc["result"]["homology"]["representatives"]
    code, doc = run_json(capsys, "specialize", PROBLEMS / "xy_squares.json", "--f0", "x^2")
    assert code == 0 and doc["result"]["specialization"] is True


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "kitt", PROBLEMS / "gf3_example.json", "--seed", 3)[1] for _ in range(3)}
    assert len(outs) == 1
    a = run(capsys, "lift", PROBLEMS / "generic_2x3.json", "--d", 1, "--seed", 9)[1]
    b = run(capsys, "lift", PROBLEMS / "generic_2x3.json", "--d", 1, "--seed", 9)[1]
    assert a == b


def test_serialized_ideals_reparse(capsys):
    problem = load_problem((PROBLEMS / "gf3_example.json").read_text())
    _, doc = run_json(capsys, "verify", PROBLEMS / "gf3_example.json")
    for key in ("kitt", "colon", "fitting"):
        ideal = doc["result"][key]
        A = Ideal(problem.ring, ideal["generators"])
        B = Ideal(problem.ring, ideal["gb"])
        assert gb.ideal_equal(A, B)


def test_parse_error_reports_line_and_column(tmp_path, capsys):
    path = write(tmp_path, '{"ring": {"field": "Q", "vars": ["x", "y"]},\n "I": ["x + 2y"]}')
    code, doc = run_json(capsys, "colon", path)
    assert code == 1
    err = doc["error"]
    assert (err["line"], err["column"]) == (2, 14)


def test_json_syntax_error(tmp_path, capsys):
    path = write(tmp_path, '{"ring": {"field": "Q",\n  "vars": ["x"]')
    code, doc = run_json(capsys, "kitt", path)
    assert code == 1
    assert doc["error"]["line"] == 2


def test_engine_errors_exit_one(tmp_path, capsys):
    path = write(tmp_path, {"ring": {"field": "Q", "vars": ["x", "y"]}, "I": ["x"], "a": ["y"]})
    code, doc = run_json(capsys, "kitt", path)
    assert code == 1 and doc["status"] == "error"
    path = write(tmp_path, {"ring": {"field": {"gf": 4}, "vars": ["x"]}, "I": ["x"]}, "q.json")
    assert run_json(capsys, "colon", path)[0] == 1
    assert run_json(capsys, "en", PROBLEMS / "generic_2x3.json", "--d", 5)[0] == 1
    assert run_json(capsys, "kitt", tmp_path / "missing.json")[0] == 1


def test_phi_shape_is_checked(tmp_path, capsys):
    path = write(tmp_path, {"ring": {"field": "Q", "vars": ["x", "y"]}, "I": ["x", "y"],
                            "a": ["x^2"], "phi": [["x"]]})
    assert run_json(capsys, "kitt", path)[0] == 1


def test_text_format(capsys):
    code, out = run(capsys, "colon", PROBLEMS / "xy_squares.json", "--format", "text")
    assert code == 0
    assert "status: ok" in out and "- x*y" in out


def test_annihilator_over_quotient(tmp_path, capsys):
    path = write(tmp_path, {"ring": {"field": {"gf": 7}, "vars": ["x", "y"], "modulus": ["x*y"]},
                            "I": ["x"], "a": []})
    code, doc = run_json(capsys, "kitt", path)
    assert code == 0 and doc["result"]["kitt"]["gb"] == ["y"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kittideal", "en", str(PROBLEMS / "generic_2x3.json"),
                           "--d", "0", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "ranks_right_to_left" in proc.stdout
