from __future__ import annotations

import json

import pytest

from motgraph.cli import EXIT_BUDGET, EXIT_FALSE, EXIT_OK, EXIT_USAGE, main, run


def _write(tmp_path, obj, name="g.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


UNIT_LOOP = {"vertices": 2, "edges": [{"src": 0, "dst": 1, "label": "a"}, {"src": 1, "dst": 0, "label": "1/a"}]}
G0 = {"vertices": 1, "edges": [{"src": 0, "dst": 0, "label": "a"}]}


def test_admissible_false_on_unit_loop(tmp_path):
    code, out = run(["admissible", _write(tmp_path, UNIT_LOOP), "--json"])
    assert code == EXIT_FALSE
    rep = json.loads(out)
    assert rep["admissible"] is False
    assert rep["failures"][0]["kind"] == "UnitLoop"


def test_diff_of_single_loop_is_empty(tmp_path):
    code, out = run(["diff", _write(tmp_path, G0), "--json"])
    assert code == EXIT_OK
    assert json.loads(out)["terms"] == 0


def test_verify_herbert():
    code, out = run(["verify-example", "herbert4", "--json"])
    assert code == EXIT_OK
    assert json.loads(out)["examples"][0]["completelyDecomposable"] == "yes"


def test_verify_diff5():
    code, out = run(["verify-example", "diff5", "--json"])
    assert code == EXIT_OK
    assert json.loads(out)["examples"][0]["differentialMatches"] is True


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["verify-example", "nope"],
        ["necklace", "2", "a0", "a1"],
        ["admissible", "/no/such/file.json"],
        ["admissible", "herbert4"],
    ],
)
def test_usage_errors(argv):
    code, out = run(argv)
    assert code == EXIT_USAGE
    assert out.startswith("error:")


def test_malformed_graph(tmp_path):
    bad = {"vertices": 1, "edges": [{"src": 0, "dst": 4, "label": "a"}]}
    assert run(["diff", _write(tmp_path, bad)])[0] == EXIT_USAGE
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert run(["diff", str(p)])[0] == EXIT_USAGE


def test_depth_budget():
    code, out = run(["decompose", "herbert4", "--depth", "0"])
    assert code == EXIT_BUDGET
    assert out.startswith("budget exceeded")


def test_deterministic_output():
    a = run(["necklace", "2", "--bold", "--json"])
    b = run(["necklace", "2", "--bold", "--json"])
    assert a == b
    assert a[0] == EXIT_OK


def test_emit_cycle_text(tmp_path):
    code, out = run(["emit-cycle", _write(tmp_path, G0)])
    assert code == EXIT_OK
    assert "[(1 - 1/(a))]" in out
    assert "1 = (a)*(1-f1)" in out


def test_circular_check():
    code, out = run(["circular-check", "1", "--json"])
    assert code == EXIT_OK
    assert json.loads(out)["closed"] is True


def test_period_exit_codes():
    assert run(["period", "2", "3", "5"])[0] == EXIT_OK
    assert run(["period", "2", "3"])[0] == EXIT_FALSE
    assert run(["period", "2", "1/2"])[0] == EXIT_USAGE


def test_main_streams(capsys):
    assert main(["verify-example", "nope"]) == EXIT_USAGE
    captured = capsys.readouterr()
    assert "unknown example" in captured.err
    assert captured.out == ""
