"""Realizability tests for mark sequences.

The general test is the prefix-sum criterion: a non-decreasing sequence
p_1..p_n is the mark sequence of a k-digraph iff every prefix sum of length t
is at least k*t*(t-1), with equality at t = n.  Tournament and oriented-graph
scores are special cases.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .core import MarkSequence


@dataclass(frozen=True)
class RealizabilityReport:
    realizable: bool
    k: int
    prefix_sums: tuple[int, ...]
    bound_values: tuple[int, ...]
    equality_points: frozenset[int]
    failing_prefix: Optional[int] = None
    failure_reason: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "realizable": self.realizable,
            "k": self.k,
            "prefix_sums": list(self.prefix_sums),
            "bound_values": list(self.bound_values),
            "equality_points": sorted(self.equality_points),
            "failing_prefix": self.failing_prefix,
            "failure_reason": self.failure_reason,
        }


def prefix_table(entries, k: int) -> tuple[list[int], list[int]]:
    sums, bounds, acc = [], [], 0
    for t, p in enumerate(entries, start=1):
        acc += p
        sums.append(acc)
        bounds.append(k * t * (t - 1))
    return sums, bounds


def check_realizable(seq: MarkSequence) -> RealizabilityReport:
    entries, k = seq.entries, seq.k
    n = len(entries)
    sums, bounds = prefix_table(entries, k)
    equal = frozenset(t for t in range(1, n + 1) if sums[t - 1] == bounds[t - 1])

    failing = None
    reason = None
    # t = n is judged by the total alone
    for t in range(1, n):
        if sums[t - 1] < bounds[t - 1]:
            failing = t
            reason = f"prefix too small: sum of first {t} marks is {sums[t - 1]} < {bounds[t - 1]}"
            break
    if failing is None and sums[-1] != bounds[-1]:
        failing = n
        reason = f"wrong total: marks sum to {sums[-1]}, expected k*n*(n-1) = {bounds[-1]}"

    return RealizabilityReport(
        realizable=failing is None,
        k=k,
        prefix_sums=tuple(sums),
        bound_values=tuple(bounds),
        equality_points=equal,
        failing_prefix=failing,
        failure_reason=reason,
    )


def is_realizable(seq: MarkSequence) -> bool:
    return check_realizable(seq).realizable


class TournamentFailure(str, enum.Enum):
    ParityViolation = "ParityViolation"
    LandauViolation = "LandauViolation"


@dataclass(frozen=True)
class TournamentReport:
    is_tournament_sequence: bool
    scores: Optional[tuple[int, ...]] = None
    failure_reason: Optional[TournamentFailure] = None
    detail: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {
            "is_tournament_sequence": self.is_tournament_sequence,
            "scores": list(self.scores) if self.scores is not None else None,
            "failure_reason": self.failure_reason.value if self.failure_reason else None,
            "detail": self.detail,
        }


def check_tournament_marks(seq: MarkSequence) -> TournamentReport:
    """Decide whether ``seq`` holds tournament marks ``p = 2s + n - 1``.

    The arc bound of ``seq`` is not consulted: the conversion fixes the
    scoring (two points per win, a tournament being played once per pair).
    """
    n = len(seq)
    scores = []
    for i, p in enumerate(seq.entries):
        if (p - (n - 1)) % 2:
            return TournamentReport(False, None, TournamentFailure.ParityViolation,
                                    f"mark {p} at position {i + 1} has the wrong parity for n={n}")
        s = (p - (n - 1)) // 2
        if s < 0:
            return TournamentReport(False, None, TournamentFailure.LandauViolation,
                                    f"mark {p} gives a negative score")
        scores.append(s)
    acc = 0
    for t, s in enumerate(scores, start=1):
        acc += s
        if acc < t * (t - 1) // 2:
            return TournamentReport(False, None, TournamentFailure.LandauViolation,
                                    f"first {t} scores sum to {acc} < C({t},2)")
    if acc != n * (n - 1) // 2:
        return TournamentReport(False, None, TournamentFailure.LandauViolation,
                                f"scores sum to {acc} != C({n},2)")
    return TournamentReport(True, tuple(scores))


def check_oriented_marks(seq: MarkSequence) -> bool:
    """Oriented-graph (Avery) scores are exactly the k=1 marks."""
    if seq.k != 1:
        seq = MarkSequence(seq.entries, 1)
    return check_realizable(seq).realizable
