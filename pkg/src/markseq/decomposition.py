"""Irreducible components of mark sequences and k-digraphs.

A k-digraph is reducible when its vertices split into a lower part V1 and an
upper part V2 with exactly k arcs from every upper vertex to every lower one.
For a realizable sequence the splits are the equality points of the prefix
test, and a component spanning positions r+1..t carries marks ``p_i - 2kr``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import KDigraph, MarkSequence, NotRealizable, compute_marks
from .realizability import check_realizable


@dataclass(frozen=True)
class Component:
    start: int  # 1-based, inclusive
    stop: int  # 1-based, inclusive
    offset: int  # number of vertices below this component
    sequence: MarkSequence

    def describe(self) -> str:
        return f"range=[{self.start}..{self.stop}] offset={self.offset} sequence={self.sequence}"

    def to_json(self) -> dict:
        return {"range": [self.start, self.stop], "offset": self.offset,
                "sequence": list(self.sequence.entries)}


@dataclass(frozen=True)
class Decomposition:
    k: int
    components: tuple[Component, ...]

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(c.offset for c in self.components)

    @property
    def sequences(self) -> list[list[int]]:
        return [list(c.sequence.entries) for c in self.components]

    def reassemble(self) -> MarkSequence:
        out = []
        for c in self.components:
            out.extend(p + 2 * self.k * c.offset for p in c.sequence.entries)
        return MarkSequence(tuple(out), self.k)

    def to_json(self) -> dict:
        return {"k": self.k, "components": [c.to_json() for c in self.components]}


def _require_realizable(seq: MarkSequence):
    rep = check_realizable(seq)
    if not rep.realizable:
        raise NotRealizable(f"{seq} is not a mark sequence (k={seq.k}): {rep.failure_reason}")
    return rep


def is_irreducible_sequence(seq: MarkSequence) -> bool:
    rep = _require_realizable(seq)
    return all(t == seq.n for t in rep.equality_points)


def decompose_sequence(seq: MarkSequence) -> Decomposition:
    rep = _require_realizable(seq)
    k = seq.k
    comps = []
    r = 0
    for t in sorted(rep.equality_points):
        part = tuple(p - 2 * k * r for p in seq.entries[r:t])
        comps.append(Component(r + 1, t, r, MarkSequence(part, k)))
        r = t
    return Decomposition(k, tuple(comps))


def _dominates(d: KDigraph, upper, lower) -> bool:
    m, k = d.mult, d.k
    return all(m[u][v] == k for u in upper for v in lower)


def _mark_order(d: KDigraph) -> list[int]:
    marks = d.vertex_marks()
    return sorted(range(d.n), key=lambda v: (marks[v], v))


def split_points(d: KDigraph) -> list[int]:
    """Prefix lengths t (1 <= t < n) of the mark-sorted vertex order at which
    the upper part fully dominates the lower part."""
    order = _mark_order(d)
    return [t for t in range(1, d.n) if _dominates(d, order[t:], order[:t])]


def reducible_subsets(d: KDigraph) -> list[frozenset[int]]:
    """Every lower part V1 admitting a reduction, by exhaustive search."""
    if d.n > 12:
        raise ValueError("exhaustive subset search is limited to n <= 12")
    found = []
    verts = range(d.n)
    for size in range(1, d.n):
        for low in itertools.combinations(verts, size):
            high = [v for v in verts if v not in low]
            if _dominates(d, high, low):
                found.append(frozenset(low))
    return found


def is_irreducible_digraph(d: KDigraph, verify: bool = False) -> bool:
    """Upper vertices of a split always have strictly larger marks than
    lower ones, so scanning prefixes of the mark order is enough.  ``verify``
    cross-checks against the exhaustive subset search."""
    fast = not split_points(d)
    if verify and d.n <= 12:
        slow = not reducible_subsets(d)
        if fast != slow:
            raise AssertionError(f"prefix scan says irreducible={fast}, subset search says {slow}")
    return fast


def decompose_digraph(d: KDigraph) -> list[KDigraph]:
    """Induced irreducible components, lowest first; vertices inside each
    component keep the mark order."""
    order = _mark_order(d)
    bounds = [0, *split_points(d), d.n]
    return [d.induced(order[a:b]) for a, b in zip(bounds, bounds[1:])]


def compose(parts: list[KDigraph]) -> KDigraph:
    """``[D1, ..., Dh]``: disjoint union plus k arcs from each later part to each earlier part."""
    if not parts:
        raise ValueError("need at least one component")
    k = parts[0].k
    if any(p.k != k for p in parts):
        raise ValueError("components must share k")
    n = sum(p.n for p in parts)
    m = [[0] * n for _ in range(n)]
    base = 0
    starts = []
    for p in parts:
        starts.append(base)
        for i in range(p.n):
            for j in range(p.n):
                m[base + i][base + j] = p.mult[i][j]
        base += p.n
    for hi, p_hi in enumerate(parts):
        for lo in range(hi):
            for i in range(p_hi.n):
                for j in range(parts[lo].n):
                    m[starts[hi] + i][starts[lo] + j] = k
    return KDigraph(k, tuple(map(tuple, m)))


@dataclass(frozen=True)
class UniqueReport:
    unique: bool
    components: Decomposition
    witness_component: Optional[Component] = None

    def to_json(self) -> dict:
        return {
            "unique": self.unique,
            "components": self.components.to_json(),
            "witness_component": self.witness_component.to_json() if self.witness_component else None,
        }


def is_uniquely_realizable(seq: MarkSequence) -> UniqueReport:
    """Unique iff every irreducible component is ``[0]`` or ``[1, 2k-1]``."""
    dec = decompose_sequence(seq)
    allowed = ((0,), (1, 2 * seq.k - 1))
    for c in dec.components:
        if c.sequence.entries not in allowed:
            return UniqueReport(False, dec, c)
    return UniqueReport(True, dec)


def component_sequences_of(d: KDigraph) -> list[list[int]]:
    return [list(compute_marks(c).entries) for c in decompose_digraph(d)]
