import json
import subprocess
import sys

import pytest

from markseq import KDigraph, compute_marks
from markseq import cli
from markseq.cli import main


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_example_i(capsys):
    code, out, _ = run(["check", "-k", "2", "1,3,9,12,15,20"], capsys)
    assert code == 0
    assert "equality points: 2, 5, 6" in out


def test_check_json(capsys):
    code, out, _ = run(["check", "-k", "2", "1,3,9,12,15,20", "--json"], capsys)
    obj = json.loads(out)
    assert obj["realizable"] and obj["equality_points"] == [2, 5, 6]


def test_check_negative(capsys):
    code, out, _ = run(["check", "-k", "1", "0,0"], capsys)
    assert code == 1
    assert "failing prefix: t=2" in out


def test_check_bad_input(capsys):
    code, _, err = run(["check", "-k", "2", "1,99"], capsys)
    assert code == 2
    assert "EntryAboveBound" in err


def test_check_bad_k(capsys):
    code, _, err = run(["check", "-k", "0", "0"], capsys)
    assert code == 2 and "BadK" in err


def test_check_missing_k(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "1,3"])
    assert exc.value.code == 2


def test_check_sort_notice(capsys):
    code, out, err = run(["check", "-k", "2", "3,1"], capsys)
    assert code == 0 and "reordered" in err


def test_check_from_file(tmp_path, capsys):
    f = tmp_path / "p.txt"
    f.write_text("1\n3\n")
    code, out, _ = run(["check", "-k", "2", "-i", str(f)], capsys)
    assert code == 0 and "[1, 3]" in out


def test_check_tournament_and_oriented(capsys):
    assert run(["check", "--kind", "tournament", "-k", "2", "2,4,6"], capsys)[0] == 0
    assert run(["check", "--kind", "tournament", "-k", "2", "3,4,5"], capsys)[0] == 1
    assert run(["check", "--kind", "oriented", "1,1,4"], capsys)[0] == 0
    assert run(["check", "--kind", "oriented", "0,0,1"], capsys)[0] == 1


def test_check_verify(capsys):
    assert run(["check", "-k", "2", "2,4,6", "--verify"], capsys)[0] == 0
    assert run(["check", "-k", "2", "0,0,8", "--verify"], capsys)[0] == 1


def test_unique_two_two(capsys):
    code, out, _ = run(["unique", "-k", "2", "2,2"], capsys)
    assert code == 1
    assert "witness component: [2, 2]" in out


def test_unique_json_and_verify(capsys):
    code, out, _ = run(["unique", "-k", "2", "0,4,8", "--json", "--verify"], capsys)
    assert code == 0 and json.loads(out)["unique"] is True


@pytest.mark.parametrize("method", ["flow", "hh24", "hh25"])
def test_realize_json_pipes_into_marks(method, capsys, monkeypatch):
    code, out, _ = run(["realize", "-k", "2", "--method", method, "2,4,6", "--format", "json"], capsys)
    assert code == 0
    d = KDigraph.from_json(json.loads(out))
    assert compute_marks(d).entries == (2, 4, 6)
    code, out2, _ = run(["marks", "-"], capsys, stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and out2.strip() == "2,4,6"


def test_realize_fallback_on_ill_defined(capsys):
    code, out, err = run(["realize", "-k", "3", "--method", "hh24", "3,3"], capsys)
    assert code == 0
    assert "IllDefinedStep" in err and "falling back to flow" in err
    assert compute_marks(KDigraph.from_json(json.loads(out))).entries == (3, 3)


def test_realize_strict(capsys):
    code, _, err = run(["realize", "-k", "3", "--method", "hh24", "--strict", "3,3"], capsys)
    assert code == 1 and "IllDefinedStep" in err


def test_realize_fallback_when_thm24_stuck(capsys):
    code, out, err = run(["realize", "-k", "2", "--method", "hh24", "0,6,6"], capsys)
    assert code == 0 and "falling back" in err
    assert compute_marks(KDigraph.from_json(json.loads(out))).entries == (0, 6, 6)


def test_realize_not_realizable(capsys):
    code, _, err = run(["realize", "-k", "1", "0,0"], capsys)
    assert code == 1 and "not realizable" in err


@pytest.mark.parametrize("fmt, marker", [("dot", "digraph D {"), ("matrix", "3 2")])
def test_realize_formats(fmt, marker, capsys):
    code, out, _ = run(["realize", "-k", "2", "2,4,6", "--format", fmt], capsys)
    assert code == 0 and out.startswith(marker)


def test_marks_matrix_file(tmp_path, capsys):
    f = tmp_path / "d.txt"
    f.write_text("3 1\n0 1 0\n0 0 1\n1 0 0\n")
    code, out, _ = run(["marks", str(f), "--json"], capsys)
    assert json.loads(out)["marks"] == [2, 2, 2]


def test_marks_rejects_bad_file(tmp_path, capsys):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"n": 2, "k": 2, "adj": [[0, 1], [2, 0]]}))
    code, _, err = run(["marks", str(f)], capsys)
    assert code == 2 and "CapacityExceeded" in err


def test_minimize_trace(tmp_path, capsys):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"n": 3, "k": 2, "adj": [[0, 0, 0], [1, 0, 0], [1, 1, 0]]}))
    code, out, err = run(["minimize", str(f), "--trace", "--verify"], capsys)
    assert code == 0
    assert err.strip() == "Shortcut reduce 3 2 1"
    d = KDigraph.from_json(json.loads(out))
    assert d.arc_count() == 2 and compute_marks(d).entries == (2, 4, 6)


def test_decompose(capsys):
    code, out, _ = run(["decompose", "-k", "2", "0,5,8,11,17,19", "--verify"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "range=[1..1] offset=0 sequence=[0]",
        "range=[2..4] offset=1 sequence=[1, 4, 7]",
        "range=[5..6] offset=4 sequence=[1, 3]",
    ]


def test_decompose_json_and_require_irreducible(capsys):
    code, out, _ = run(["decompose", "-k", "2", "1,3,9,12,15,20", "--json", "--require-irreducible"], capsys)
    assert code == 1
    assert [c["sequence"] for c in json.loads(out)["components"]] == [[1, 3], [1, 4, 7], [0]]


def test_decompose_digraph(tmp_path, capsys):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"n": 3, "k": 2, "adj": [[0, 0, 0], [2, 0, 1], [2, 0, 0]]}))
    code, out, _ = run(["decompose", "--digraph", str(f)], capsys)
    assert code == 0
    assert out.splitlines() == ["component 1: n=1 sequence=[0]", "component 2: n=2 sequence=[1, 3]"]


def test_oracle_subcommands(capsys):
    code, out, _ = run(["oracle", "sequences", "-n", "2", "-k", "2"], capsys)
    assert code == 0 and out.split() == ["0,4", "1,3", "2,2"]
    code, out, _ = run(["oracle", "count", "-k", "2", "2,2", "--json"], capsys)
    assert json.loads(out)["iso_classes"] == 2
    code, out, _ = run(["oracle", "minarcs", "-k", "2", "2,4,6"], capsys)
    assert out.strip() == "2"
    code, _, err = run(["oracle", "sequences", "-n", "9", "-k", "3"], capsys)
    assert code == 2 and "TooLarge" in err


def test_convert(tmp_path, capsys):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"n": 2, "k": 2, "adj": [[0, 2], [0, 0]]}))
    code, out, _ = run(["convert", str(f), "--format", "dot"], capsys)
    assert out.count("v1 -> v2;") == 2
    code, out, _ = run(["convert", str(f), "--format", "matrix"], capsys)
    assert out == "2 2\n0 2\n0 0\n"


def test_verify_mismatch_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "realizable_set_bruteforce", lambda n, k, jobs=1: set())
    code, _, err = run(["check", "-k", "2", "2,4,6", "--verify"], capsys)
    assert code == 3 and "VERIFY FAILED" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "markseq", "check", "-k", "2", "1,3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "realizable: yes" in proc.stdout


def test_tournament_ignores_k(capsys):
    # p = 2s + n - 1 reaches 3(n-1), above the k=1 bound, so -k must not apply
    code, out, _ = run(["check", "--kind", "tournament", "-k", "1", "2,4,6"], capsys)
    assert code == 0 and "scores: [0, 1, 2]" in out
    assert run(["check", "--kind", "tournament", "4,4,4"], capsys)[0] == 0
