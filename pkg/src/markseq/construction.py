"""Constructing a k-digraph with a prescribed mark sequence.

Two routes are provided:

* ``realize_flow`` routes the surplus ``q_i = p_i - k(n-1)`` through a
  source/sink network with capacity ``k`` on every ordered vertex pair and
  reads the digraph off an integral maximum flow.
* ``realize_hh`` repeatedly deletes the largest mark and lowers the remaining
  ones by 0, 1 or 2 (two reduction rules, ``THM24`` and ``THM25``), then
  rebuilds the digraph by re-adding the deleted vertices.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import KDigraph, MarkSequence, NotRealizable
from .realizability import check_realizable


class IllDefinedStep(ValueError):
    """The reduction rule asks for more 1/2-reductions than there are entries."""


class NegativeEntryProduced(NotRealizable):
    """A reduction pushed an entry below zero; the input is not realizable."""


# -- flow network ---------------------------------------------------------


@dataclass(frozen=True)
class FlowNetwork:
    """Node 0 is the source, nodes 1..n the vertices, node n+1 the sink."""

    n: int
    k: int
    q: tuple[int, ...]
    capacity: tuple[tuple[int, ...], ...]

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return self.n + 1

    @property
    def demand(self) -> int:
        return sum(x for x in self.q if x > 0)

    @property
    def supply(self) -> int:
        return -sum(x for x in self.q if x < 0)


def build_network(entries: Sequence[int], k: int) -> FlowNetwork:
    """Network for a raw mark list; the list need not be realizable."""
    n = len(entries)
    q = tuple(p - k * (n - 1) for p in entries)
    size = n + 2
    cap = [[0] * size for _ in range(size)]
    for i, qi in enumerate(q, start=1):
        if qi < 0:
            cap[0][i] = -qi
        elif qi > 0:
            cap[i][n + 1] = qi
        for j in range(1, n + 1):
            if j != i:
                cap[i][j] = k
    return FlowNetwork(n, k, q, tuple(map(tuple, cap)))


def max_flow_integral(net: FlowNetwork) -> tuple[list[list[int]], int]:
    """Edmonds-Karp with neighbours scanned in increasing node order.

    Returns ``(flow, value)`` where ``flow[a][b]`` is the flow on arc a -> b.
    Flow on the two arcs of an opposite pair is kept separately, so 2-cycles
    may remain; see ``cancel_two_cycles``.
    """
    size = net.n + 2
    s, t = net.source, net.sink
    cap = net.capacity
    flow = [[0] * size for _ in range(size)]
    value = 0
    while True:
        parent = [-1] * size
        parent[s] = s
        # residual of a->b is cap[a][b] - flow[a][b] + flow[b][a]
        queue = deque([s])
        while queue and parent[t] < 0:
            a = queue.popleft()
            for b in range(size):
                if parent[b] < 0 and cap[a][b] - flow[a][b] + flow[b][a] > 0:
                    parent[b] = a
                    queue.append(b)
        if parent[t] < 0:
            return flow, value
        path = []
        b = t
        while b != s:
            path.append((parent[b], b))
            b = parent[b]
        delta = min(cap[a][b] - flow[a][b] + flow[b][a] for a, b in path)
        for a, b in path:
            # cancel opposing flow first so flow[a][b] never exceeds cap[a][b]
            back = min(delta, flow[b][a])
            flow[b][a] -= back
            flow[a][b] += delta - back
        value += delta


def cancel_two_cycles(flow: list[list[int]]) -> list[list[int]]:
    """Return a copy with ``min(f[i][j], f[j][i])`` removed from both directions."""
    out = [row[:] for row in flow]
    size = len(out)
    for i in range(size):
        for j in range(i + 1, size):
            m = min(out[i][j], out[j][i])
            if m:
                out[i][j] -= m
                out[j][i] -= m
    return out


def realize_flow(seq: MarkSequence) -> KDigraph:
    n, k = seq.n, seq.k
    net = build_network(seq.entries, k)
    if net.demand != net.supply:
        raise NotRealizable(f"{seq}: marks sum to {seq.total()}, expected {k * n * (n - 1)}")
    flow, value = max_flow_integral(net)
    if value < net.demand:
        raise NotRealizable(f"{seq}: max flow {value} < demand {net.demand}")
    flow = cancel_two_cycles(flow)
    # vertex i is node i+1; surplus vertices must *receive* arcs' heads, so
    # a unit of flow j -> i becomes an arc i -> j
    mult = tuple(
        tuple(0 if i == j else flow[j + 1][i + 1] for j in range(n))
        for i in range(n)
    )
    return KDigraph(k, mult)


# -- Havel-Hakimi style reductions ----------------------------------------


class Rule(str, enum.Enum):
    THM24 = "THM24"
    THM25 = "THM25"


class Variant(str, enum.Enum):
    HH24a = "HH24a"
    HH24b = "HH24b"
    HH25a = "HH25a"
    HH25b = "HH25b"


@dataclass(frozen=True)
class ReductionPlan:
    removed_entry: int
    r: int
    variant: Variant
    deltas: tuple[int, ...]
    reduced_sequence: tuple[int, ...]


def _plan_deltas(m: int, r: int, rule: Rule) -> tuple[Variant, list[int]]:
    """Deltas for ``m`` remaining entries (sorted ascending) when the removed
    vertex is ``r`` short of the maximum mark.  Larger entries come last, so
    "greatest entries" are the rightmost positions."""
    if r > 2 * m:
        raise IllDefinedStep(f"r={r} exceeds 2(n-1)={2 * m}: the rule only lowers entries by 1 or 2")
    deltas = [0] * m
    if rule is Rule.THM24:
        if r <= m:
            variant = Variant.HH24a
            for i in range(m - r, m):
                deltas[i] = 1
        else:
            variant = Variant.HH24b
            twos = r - m
            for i in range(m):
                deltas[i] = 2 if i >= m - twos else 1
    else:
        t, odd = divmod(r, 2)
        variant = Variant.HH25b if odd else Variant.HH25a
        for i in range(m - t, m):
            deltas[i] = 2
        if odd:
            deltas[m - t - 1] = 1
    return variant, deltas


def hh_step(seq: MarkSequence, rule: Rule | str = Rule.THM24) -> ReductionPlan:
    """One reduction: drop the largest mark and lower the rest per ``rule``."""
    rule = Rule(rule)
    n, k = seq.n, seq.k
    if n < 2:
        raise ValueError("hh_step needs at least two entries")
    entries = seq.entries
    last = entries[-1]
    r = 2 * k * (n - 1) - last
    variant, deltas = _plan_deltas(n - 1, r, rule)
    lowered = [p - d for p, d in zip(entries[:-1], deltas)]
    for i, x in enumerate(lowered):
        if x < 0:
            raise NegativeEntryProduced(f"{seq}: entry {entries[i]} at position {i + 1} drops to {x}")
    return ReductionPlan(last, r, variant, tuple(deltas), tuple(sorted(lowered)))


def realize_hh(seq: MarkSequence, rule: Rule | str = Rule.THM24, verify: bool = False) -> KDigraph:
    """Realize ``seq`` by recursive reduction; vertex order follows ``seq``.

    With ``verify`` each intermediate sequence is re-checked with the
    prefix-sum criterion and a disagreement is reported immediately.
    """
    rule = Rule(rule)
    n, k = seq.n, seq.k
    total = seq.total()
    if total != k * n * (n - 1):
        raise NotRealizable(f"{seq}: marks sum to {total}, expected {k * n * (n - 1)}")

    mult = [[0] * n for _ in range(n)]
    # (mark, vertex) pairs; vertices are the positions in seq
    current = [(p, v) for v, p in enumerate(seq.entries)]
    while len(current) > 1:
        m = len(current)
        current.sort()
        if current[-1][0] > 2 * k * (m - 1):
            raise NotRealizable(f"{seq}: intermediate mark {current[-1][0]} exceeds 2k(n-1) = {2 * k * (m - 1)}")
        if verify:
            ok = check_realizable(MarkSequence(tuple(p for p, _ in current), k)).realizable
            if not ok:
                raise NotRealizable(f"{seq}: intermediate sequence {[p for p, _ in current]} fails the prefix test")
        values = MarkSequence(tuple(p for p, _ in current), k)
        plan = hh_step(values, rule)
        top = current[-1][1]
        rest = current[:-1]
        for (p, v), d in zip(rest, plan.deltas):
            if d == 0:
                mult[top][v] = k
            elif d == 1:
                mult[top][v] = k - 1
            else:
                mult[top][v] = k - 1
                mult[v][top] = 1
        current = [(p - d, v) for (p, v), d in zip(rest, plan.deltas)]
    if current[0][0] != 0:
        raise NotRealizable(f"{seq}: reduction ends at [{current[0][0]}] instead of [0]")
    return KDigraph(k, tuple(map(tuple, mult)))
