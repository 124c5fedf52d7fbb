import json
import random

import pytest
from hypothesis import given

from markseq import ErrorKind, KDigraph, MarkSequence, ValidationError, compute_marks, parse_sequence, validate_digraph
from markseq.core import sequence_from_lines

from conftest import digraph_from_arcs, digraphs


def test_marks_of_empty_digraph():
    d = KDigraph.empty(3, 2)
    assert compute_marks(d).entries == (4, 4, 4)


def test_marks_of_transitive_tournament():
    # arcs 3->2, 3->1, 2->1 (0-based 2->1, 2->0, 1->0)
    d = digraph_from_arcs(3, 1, [(2, 1), (2, 0), (1, 0)])
    assert compute_marks(d).entries == (0, 2, 4)


def test_tournament_as_single_arc_2_digraph():
    d = digraph_from_arcs(3, 2, [(2, 1), (2, 0), (1, 0)])
    assert compute_marks(d).entries == (2, 4, 6)


def test_single_vertex():
    assert compute_marks(KDigraph.empty(1, 5)).entries == (0,)


@pytest.mark.parametrize(
    "raw, kind, where",
    [
        ([[0, 1], [2, 0]], ErrorKind.CapacityExceeded, (0, 1)),
        ([[1, 0], [0, 0]], ErrorKind.NonzeroDiagonal, 0),
        ([[0, -1], [0, 0]], ErrorKind.NegativeEntry, (0, 1)),
        ([[0, 1, 0], [0, 0]], ErrorKind.BadDimensions, 0),
    ],
)
def test_validate_digraph_rejects(raw, kind, where):
    with pytest.raises(ValidationError) as exc:
        validate_digraph(2, 2, raw)
    assert exc.value.kind is kind
    assert exc.value.location == where


def test_validate_digraph_accepts_full_pair():
    d = validate_digraph(2, 2, [[0, 2], [0, 0]])
    assert d.n == 2 and d.mult == ((0, 2), (0, 0))


@pytest.mark.parametrize("k", [0, -1, 1001])
def test_bad_k(k):
    with pytest.raises(ValidationError) as exc:
        validate_digraph(2, k, [[0, 0], [0, 0]])
    assert exc.value.kind is ErrorKind.BadK


def test_row_count_mismatch():
    with pytest.raises(ValidationError) as exc:
        validate_digraph(3, 1, [[0, 0], [0, 0]])
    assert exc.value.kind is ErrorKind.BadDimensions


def test_parse_sequence_example():
    seq = parse_sequence("1,3,9,12,15,20", 2)
    assert seq.entries == (1, 3, 9, 12, 15, 20)
    assert not seq.sort_applied


def test_parse_sequence_sorts_and_flags():
    seq = parse_sequence("3,1", 2)
    assert seq.entries == (1, 3)
    assert seq.sort_applied


@pytest.mark.parametrize(
    "text, k, kind",
    [("1,99", 2, ErrorKind.EntryAboveBound), ("-1,3", 2, ErrorKind.NegativeEntry),
     ("1,3", 0, ErrorKind.BadK), ("", 2, ErrorKind.BadDimensions), ("1,x", 2, ErrorKind.BadDimensions),
     ("1", 2, ErrorKind.EntryAboveBound)],
)
def test_parse_sequence_errors(text, k, kind):
    with pytest.raises(ValidationError) as exc:
        parse_sequence(text, k)
    assert exc.value.kind is kind


def test_sequence_from_lines_skips_comments():
    seq = sequence_from_lines(["# marks", "3", "", "1  # low"], 2)
    assert seq.entries == (1, 3)


def test_json_round_trip():
    d = digraph_from_arcs(3, 2, [(0, 1), (0, 1), (2, 1)])
    obj = json.loads(d.dumps())
    assert obj == {"n": 3, "k": 2, "adj": [[0, 2, 0], [0, 0, 0], [0, 1, 0]]}
    assert KDigraph.from_json(obj) == d


def test_from_json_missing_field():
    with pytest.raises(ValidationError):
        KDigraph.from_json({"n": 2, "adj": [[0, 0], [0, 0]]})


def test_matrix_text_round_trip():
    d = digraph_from_arcs(3, 2, [(0, 1), (1, 0), (2, 0)])
    assert KDigraph.from_matrix_text(d.to_matrix_text()) == d


def test_dot_has_one_edge_line_per_arc_unit():
    d = validate_digraph(2, 2, [[0, 2], [0, 0]])
    dot = d.to_dot()
    assert dot.count("v1 -> v2;") == 2
    assert "->" not in dot.replace("v1 -> v2;", "")


@given(digraphs())
def test_total_mark_identity(d):
    seq = compute_marks(d)
    assert seq.total() == d.k * d.n * (d.n - 1)
    assert all(0 <= p <= 2 * d.k * (d.n - 1) for p in seq)


@given(digraphs(max_n=6))
def test_marks_invariant_under_relabeling(d):
    perm = list(range(d.n))
    random.Random(d.n * 31 + d.k).shuffle(perm)
    assert compute_marks(d.permuted(perm)) == compute_marks(d)
