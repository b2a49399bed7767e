import json
import subprocess
import sys

import pytest

from oql.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_PARSE, main

NON_ASSOCIATIVE = {
    "elements": ["0", "a", "b", "1"],
    "leq": [["0", "a"], ["a", "b"], ["b", "1"]],
    "unit": "1",
    "tensor": {"0,0": "0", "0,a": "0", "0,b": "0", "0,1": "0", "a,a": "0", "a,b": "a",
               "a,1": "a", "b,b": "a", "b,1": "b", "1,1": "1"},
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_classify_lukasiewicz_is_mv(capsys):
    code, rep = run_json(capsys, "quantale", "classify", "--builtin", "lukasiewicz:3")
    assert code == EXIT_OK
    assert rep["stamps"]["flags"]["mv"] is True


def test_verify_non_associative_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(NON_ASSOCIATIVE))
    code, out, _ = run(capsys, "quantale", "verify", str(path))
    assert code == EXIT_FAIL
    assert "witness: a, b, b" in out


def test_parse_error_names_position(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"elements": [\n')
    code, _, err = run(capsys, "quantale", "verify", str(path))
    assert code == EXIT_PARSE
    assert "line 2" in err


def test_missing_file_and_unknown_builtin(capsys):
    assert run(capsys, "quantale", "verify", "/nonexistent/q.json")[0] == EXIT_PARSE
    assert run(capsys, "cd", "check", "--builtin", "nope")[0] == EXIT_PARSE


def test_enumerate_two_chain(capsys):
    code, rep = run_json(capsys, "quantale", "enumerate", "--chain", "2")
    assert code == EXIT_OK
    assert rep["stamps"]["count"] == 1


def test_enumerate_shards_match(capsys):
    _, one, _ = run(capsys, "quantale", "enumerate", "--chain", "4", "--format", "json")
    _, three, _ = run(capsys, "quantale", "enumerate", "--chain", "4", "--shards", "3", "--format", "json")
    assert one == three


def test_cd_down_prints_table(capsys):
    code, rep = run_json(capsys, "cd", "check", "--builtin", "boolean2", "--down")
    assert code == EXIT_OK
    assert rep["stamps"]["downarrow"] == {"0": {"0": "0", "1": "0"}, "1": {"0": "1", "1": "1"}}


def test_cd_dual_goedel_is_flagged(capsys):
    code, rep = run_json(capsys, "cd", "check", "--builtin", "goedel:3", "--dual")
    assert code == EXIT_FAIL
    (check,) = [c for c in rep["checks"] if c["name"] == "is-cd"]
    assert not check["ok"]
    assert "not Girard" in check["detail"]["note"]


def test_duality_alias_all_green(capsys):
    code, rep = run_json(capsys, "girard", "theorem11", "--builtin", "lukasiewicz:3", "--corpus", "auto")
    assert code == EXIT_OK
    assert rep["summary"]["failed"] == 0
    assert rep["stamps"]["heyting_op"] is True


def test_struct_raney_buchi(capsys):
    code, rep = run_json(capsys, "struct", "raney-buchi", "--builtin", "boolean:2")
    assert code == EXIT_OK
    assert rep["summary"]["failed"] == 0


@pytest.mark.parametrize("action", ["subalgebras", "quotients", "left-adjoints"])
def test_struct_actions(capsys, action):
    assert run(capsys, "struct", action, "--builtin", "lukasiewicz:3")[0] == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["cat", "check", "--builtin", "goedel:3"],
    ["lat", "check", "--builtin", "nonintegral3"],
    ["girard", "negation", "--builtin", "boolean2"],
    ["girard", "free", "--builtin", "boolean2", "--target", "1"],
])
def test_other_commands_pass(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_OK


def test_budget_exceeded_exit_code(capsys):
    code, out, err = run(capsys, "cat", "check", "--builtin", "lukasiewicz:5", "--budget", "10")
    assert code == EXIT_BUDGET
    assert "budget" in err
    assert "SKIP" in out


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("OQL_BUDGET", "10")
    assert run(capsys, "cat", "check", "--builtin", "lukasiewicz:5")[0] == EXIT_BUDGET


def test_category_file(tmp_path, capsys):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"quantale": "boolean2", "objects": ["a", "b"], "hom": {"a,b": "1", "b,a": "0"}}))
    code, rep = run_json(capsys, "cd", "check", "--file", str(path))
    assert code == EXIT_OK


def test_json_is_byte_identical_and_has_no_timing(capsys):
    argv = ["struct", "quotients", "--builtin", "goedel:3", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert "seconds" not in first
    _, timed, _ = run(capsys, *argv, "--timing")
    assert "seconds" in timed


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "quantale", "classify", "--builtin", "goedel:3", "--format", "json", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["stamps"]["command"] == \
        "oql quantale classify --builtin goedel:3 --format json --out " + str(path)


def test_text_report_lists_failures_first(tmp_path, capsys):
    code, out, _ = run(capsys, "cd", "check", "--builtin", "goedel:3", "--dual")
    lines = [line for line in out.splitlines() if line.strip().startswith(("ok", "FAIL"))]
    assert lines[0].strip().startswith("FAIL")


def test_mine_sharded_equals_unsharded(capsys):
    _, plain, _ = run(capsys, "mine", "--chain", "2..3", "--format", "json")
    _, sharded, _ = run(capsys, "mine", "--chain", "2..3", "--shards", "4", "--format", "json")
    assert plain == sharded
    rep = json.loads(plain)
    assert rep["summary"]["failed"] == 0
    assert rep["stamps"]["quantales"] == {"chain2": 1, "chain3": 3}


def test_mine_lattice_file_and_suite_selection(tmp_path, capsys):
    path = tmp_path / "diamond.json"
    path.write_text(json.dumps({"elements": ["0", "a", "b", "1"], "leq": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]]}))
    code, rep = run_json(capsys, "mine", "--lattice", str(path), "--suite", "identities,yoneda")
    assert code == EXIT_OK
    assert rep["stamps"]["quantales"]["diamond"] > 0
    assert all("/identities/" in c["name"] or "/yoneda/" in c["name"] for c in rep["checks"])


def test_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "oql.cli", "quantale", "classify", "--builtin", "boolean2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "flag/girard" in proc.stdout
