"""Brute-force ground truth for small k-digraphs.

Everything here enumerates: all labeled k-digraphs on n vertices (one state
``(x1, x2)`` with ``x1 + x2 <= k`` per vertex pair), isomorphism by trying
every vertex permutation.  It is meant to be obviously correct, not fast.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Optional

from .core import KDigraph, MarkSequence, NotRealizable

STATE_LIMIT = 10**8
ISO_MAX_N = 8
# enumerations at most this large are grouped by sequence once and cached
_INDEX_LIMIT = 300_000


class TooLarge(ValueError):
    pass


def pair_states(k: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(k + 1) for b in range(k + 1 - a)]


def state_space(n: int, k: int) -> int:
    return ((k + 1) * (k + 2) // 2) ** comb(n, 2)


def _guard(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    size = state_space(n, k)
    if size > STATE_LIMIT:
        raise TooLarge(f"{size} labeled {k}-digraphs on {n} vertices exceeds the limit {STATE_LIMIT}")


def _flat_digraphs(n: int, k: int, first: Optional[int] = None) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(flat matrix, vertex marks)``; ``first`` pins the state index of
    the first pair, which is how work is split across processes."""
    pairs = list(itertools.combinations(range(n), 2))
    states = pair_states(k)
    choices = [states] * len(pairs)
    if first is not None and pairs:
        choices[0] = [states[first]]
    base = k * (n - 1)
    for combo in itertools.product(*choices):
        flat = [0] * (n * n)
        marks = [base] * n
        for (i, j), (a, b) in zip(pairs, combo):
            flat[i * n + j] = a
            flat[j * n + i] = b
            marks[i] += a - b
            marks[j] += b - a
        yield tuple(flat), tuple(marks)


def _unflatten(flat, n: int, k: int) -> KDigraph:
    return KDigraph(k, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


def enumerate_digraphs(n: int, k: int) -> Iterator[KDigraph]:
    """Every labeled k-digraph on n vertices exactly once, in lexicographic
    order of the pair states (pairs taken as (0,1), (0,2), ..., (n-2,n-1))."""
    _guard(n, k)
    for flat, _ in _flat_digraphs(n, k):
        yield _unflatten(flat, n, k)


def _sequences_worker(args) -> set[tuple[int, ...]]:
    n, k, first = args
    return {tuple(sorted(marks)) for _, marks in _flat_digraphs(n, k, first)}


def realizable_set_bruteforce(n: int, k: int, jobs: int = 1) -> set[tuple[int, ...]]:
    """All sorted mark sequences attained by some labeled k-digraph on n vertices."""
    _guard(n, k)
    if jobs <= 1 or n < 2:
        return _sequences_worker((n, k, None))
    tasks = [(n, k, s) for s in range(len(pair_states(k)))]
    out: set[tuple[int, ...]] = set()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_sequences_worker, tasks):
            out |= part
    return out


def candidate_sequences(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing sequences in [0, 2k(n-1)] with total k*n*(n-1)."""
    top = 2 * k * (n - 1)
    total = k * n * (n - 1)

    def rec(prefix, lo, remaining, left):
        if left == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for x in range(lo, min(top, remaining) + 1):
            # the remaining entries are all >= x and <= top
            if x * left > remaining or top * left < remaining:
                continue
            prefix.append(x)
            yield from rec(prefix, x, remaining - x, left - 1)
            prefix.pop()

    yield from rec([], 0, total, n)


# -- isomorphism ----------------------------------------------------------


def _canonical_flat(flat, n: int) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(flat[perm[i] * n + perm[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return best


def canonical_form(d: KDigraph) -> tuple[int, ...]:
    """Lexicographically least flattened matrix over all relabelings."""
    if d.n > ISO_MAX_N:
        raise TooLarge(f"canonical form by permutation scan is limited to n <= {ISO_MAX_N}")
    flat = tuple(x for row in d.mult for x in row)
    return (d.k, d.n) + _canonical_flat(flat, d.n)


@lru_cache(maxsize=16)
def _index(n: int, k: int) -> dict[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    groups: dict[tuple[int, ...], list] = {}
    for flat, marks in _flat_digraphs(n, k):
        groups.setdefault(tuple(sorted(marks)), []).append(flat)
    return {key: tuple(v) for key, v in groups.items()}


def _realizations_flat(seq: MarkSequence) -> tuple[tuple[int, ...], ...]:
    n, k = seq.n, seq.k
    _guard(n, k)
    if state_space(n, k) <= _INDEX_LIMIT:
        return _index(n, k).get(seq.entries, ())
    target = seq.entries
    return tuple(flat for flat, marks in _flat_digraphs(n, k) if tuple(sorted(marks)) == target)


def realizations(seq: MarkSequence) -> list[KDigraph]:
    return [_unflatten(f, seq.n, seq.k) for f in _realizations_flat(seq)]


@dataclass(frozen=True)
class RealizationCount:
    labeled: int
    iso_classes: int

    def to_json(self) -> dict:
        return {"labeled": self.labeled, "iso_classes": self.iso_classes}


def count_realizations(seq: MarkSequence) -> RealizationCount:
    if seq.n > ISO_MAX_N:
        raise TooLarge(f"isomorphism classing is limited to n <= {ISO_MAX_N}")
    flats = _realizations_flat(seq)
    keys = {_canonical_flat(f, seq.n) for f in flats}
    return RealizationCount(len(flats), len(keys))


def min_arc_count_bruteforce(seq: MarkSequence) -> int:
    flats = _realizations_flat(seq)
    if not flats:
        raise NotRealizable(f"{seq} has no realization (k={seq.k})")
    return min(sum(f) for f in flats)
