"""Mark-preserving local moves and arc minimization.

Three move kinds, each with a reducing and an expanding direction:

* ``Cycle3``    u->v, v->w, w->u  <->  nothing            (3 arcs)
* ``Shortcut``  u->v, v->w        <->  u->w               (net 1 arc)
* ``PairCancel`` u->v, v->u       <->  nothing            (2 arcs)

Every move leaves each vertex's outdegree minus indegree unchanged, hence
the marks.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .core import KDigraph


class MoveKind(str, enum.Enum):
    PairCancel = "PairCancel"
    Cycle3 = "Cycle3"
    Shortcut = "Shortcut"


class Direction(str, enum.Enum):
    reduce = "reduce"
    expand = "expand"


class InapplicableMove(ValueError):
    pass


# priority used by minimize_arcs and the scan order of enumerate_moves
KIND_ORDER = (MoveKind.PairCancel, MoveKind.Cycle3, MoveKind.Shortcut)


@dataclass(frozen=True)
class TripleMove:
    kind: MoveKind
    direction: Direction
    vertices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind.value} {self.direction.value} " + " ".join(str(v + 1) for v in self.vertices)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "direction": self.direction.value, "vertices": list(self.vertices)}

    def changes(self) -> list[tuple[int, int, int]]:
        """``(i, j, delta)`` multiplicity changes made by this move."""
        sign = -1 if self.direction is Direction.reduce else 1
        if self.kind is MoveKind.PairCancel:
            u, v = self.vertices
            return [(u, v, sign), (v, u, sign)]
        u, v, w = self.vertices
        if self.kind is MoveKind.Cycle3:
            return [(u, v, sign), (v, w, sign), (w, u, sign)]
        return [(u, v, sign), (v, w, sign), (u, w, -sign)]

    def arc_delta(self) -> int:
        return sum(d for _, _, d in self.changes())


def _applicable(m, k: int, move: TripleMove) -> bool:
    if move.kind is MoveKind.Shortcut and move.direction is Direction.reduce:
        u, v, w = move.vertices
        # adding u->w next to an existing w->u would form a 2-cycle; that
        # configuration is a Cycle3 instead
        if m[w][u] != 0:
            return False
    touched = {}
    for i, j, d in move.changes():
        touched[(i, j)] = touched.get((i, j), 0) + d
    for (i, j), d in touched.items():
        if m[i][j] + d < 0:
            return False
    pairs = {(min(i, j), max(i, j)) for i, j in touched}
    for a, b in pairs:
        if m[a][b] + touched.get((a, b), 0) + m[b][a] + touched.get((b, a), 0) > k:
            return False
    return True


def is_applicable(d: KDigraph, move: TripleMove) -> bool:
    return _applicable(d.mult, d.k, move)


def _candidates(n: int, kind: MoveKind):
    if kind is MoveKind.PairCancel:
        return itertools.combinations(range(n), 2)
    if kind is MoveKind.Cycle3:
        # a directed triangle is listed once, starting at its smallest vertex
        return ((u, v, w) for u, v, w in itertools.permutations(range(n), 3) if u < v and u < w)
    return itertools.permutations(range(n), 3)


def enumerate_moves(d: KDigraph, direction: Direction | None = None) -> list[TripleMove]:
    """All applicable moves: reduce before expand, then kind priority, then
    lexicographic vertices."""
    directions = (Direction.reduce, Direction.expand) if direction is None else (Direction(direction),)
    out = []
    for dr in directions:
        for kind in KIND_ORDER:
            for vs in _candidates(d.n, kind):
                mv = TripleMove(kind, dr, vs)
                if _applicable(d.mult, d.k, mv):
                    out.append(mv)
    return out


def apply_move(d: KDigraph, move: TripleMove) -> KDigraph:
    if len(move.vertices) != (2 if move.kind is MoveKind.PairCancel else 3) or len(set(move.vertices)) != len(move.vertices):
        raise InapplicableMove(f"bad vertex tuple for {move.kind.value}: {move.vertices}")
    if any(not 0 <= v < d.n for v in move.vertices):
        raise InapplicableMove(f"vertex out of range in {move}")
    if not _applicable(d.mult, d.k, move):
        raise InapplicableMove(str(move))
    m = d.to_lists()
    for i, j, delta in move.changes():
        m[i][j] += delta
    return KDigraph(d.k, tuple(map(tuple, m)))


def _first_reduce(m, n: int, k: int) -> TripleMove | None:
    for u in range(n):
        for v in range(u + 1, n):
            if m[u][v] and m[v][u]:
                return TripleMove(MoveKind.PairCancel, Direction.reduce, (u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if not m[u][v]:
                continue
            for w in range(u + 1, n):
                if w != v and m[v][w] and m[w][u]:
                    return TripleMove(MoveKind.Cycle3, Direction.reduce, (u, v, w))
    for u in range(n):
        for v in range(n):
            if v == u or not m[u][v]:
                continue
            for w in range(n):
                if w != u and w != v and m[v][w] and not m[w][u] and m[u][w] < k:
                    return TripleMove(MoveKind.Shortcut, Direction.reduce, (u, v, w))
    return None


def minimize_arcs(d: KDigraph) -> tuple[KDigraph, list[TripleMove]]:
    """Apply reducing moves until none applies; return the result and the trace.

    Each step takes the first applicable reduce move in the order used by
    ``enumerate_moves``.
    """
    n, k = d.n, d.k
    m = d.to_lists()
    trace = []
    while True:
        mv = _first_reduce(m, n, k)
        if mv is None:
            break
        for i, j, delta in mv.changes():
            m[i][j] += delta
        trace.append(mv)
    return KDigraph(k, tuple(map(tuple, m))), trace


def _pair_choices(m, a: int, b: int):
    # a pair carrying arcs must contribute one of them; only an empty pair
    # contributes nothing
    opts = []
    if m[a][b]:
        opts.append((a, b))
    if m[b][a]:
        opts.append((b, a))
    return opts or [None]


def _relation_transitive(arcs) -> bool:
    for a, b in arcs:
        for c, e in arcs:
            if b == c and e != a and (a, e) not in arcs:
                return False
    return True


def intransitive_triples(d: KDigraph, first_only: bool = False) -> list[tuple[int, int, int]]:
    m = d.mult
    bad = []
    for u, v, w in itertools.combinations(range(d.n), 3):
        for sel in itertools.product(_pair_choices(m, u, v), _pair_choices(m, v, w), _pair_choices(m, u, w)):
            arcs = {a for a in sel if a is not None}
            if not _relation_transitive(arcs):
                bad.append((u, v, w))
                if first_only:
                    return bad
                break
    return bad


def is_transitive(d: KDigraph) -> bool:
    """True iff every 1-triple that can be picked from a vertex triple is transitive.

    A 1-triple picks, for each of the three pairs, one arc of the pair (either
    direction with positive multiplicity), or no arc when the pair is empty.
    """
    return not intransitive_triples(d, first_only=True)
