"""Value types for k-digraphs and mark sequences.

A k-digraph is stored as a dense n x n multiplicity matrix; ``mult[i][j]`` is
the number of arcs i -> j.  The mark of vertex i is
``k(n-1) + outdeg(i) - indeg(i)``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_N = 10_000
MAX_K = 1_000


class ErrorKind(str, enum.Enum):
    NegativeEntry = "NegativeEntry"
    EntryAboveBound = "EntryAboveBound"
    CapacityExceeded = "CapacityExceeded"
    NonzeroDiagonal = "NonzeroDiagonal"
    BadDimensions = "BadDimensions"
    BadK = "BadK"


class ValidationError(ValueError):
    """Raised when a digraph or sequence violates a core invariant.

    ``location`` is an index, an (i, j) pair, or None when the failure is
    global (e.g. a bad k).
    """

    def __init__(self, kind: ErrorKind, location=None, detail: str = ""):
        self.kind = ErrorKind(kind)
        self.location = location
        msg = self.kind.value
        if location is not None:
            msg += f" at {location}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotRealizable(ValueError):
    """The sequence is not the mark sequence of any k-digraph."""


def _check_k(k) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1 or k > MAX_K:
        raise ValidationError(ErrorKind.BadK, None, f"k must be an integer in [1, {MAX_K}], got {k!r}")


@dataclass(frozen=True)
class KDigraph:
    """Loopless multi-digraph with at most ``k`` arcs between any vertex pair."""

    k: int
    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_k(self.k)
        rows = tuple(tuple(int(x) for x in row) for row in self.mult)
        object.__setattr__(self, "mult", rows)
        n = len(rows)
        if n < 1 or n > MAX_N:
            raise ValidationError(ErrorKind.BadDimensions, None, f"need 1 <= n <= {MAX_N}, got {n}")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValidationError(ErrorKind.BadDimensions, i, f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            if rows[i][i] != 0:
                raise ValidationError(ErrorKind.NonzeroDiagonal, i)
            for j in range(n):
                if rows[i][j] < 0:
                    raise ValidationError(ErrorKind.NegativeEntry, (i, j))
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] + rows[j][i] > self.k:
                    raise ValidationError(
                        ErrorKind.CapacityExceeded, (i, j),
                        f"{rows[i][j]} + {rows[j][i]} > k={self.k}",
                    )

    @property
    def n(self) -> int:
        return len(self.mult)

    @classmethod
    def empty(cls, n: int, k: int) -> KDigraph:
        return cls(k, tuple((0,) * n for _ in range(n)))

    def arc_count(self) -> int:
        return sum(map(sum, self.mult))

    def outdegree(self, v: int) -> int:
        return sum(self.mult[v])

    def indegree(self, v: int) -> int:
        return sum(row[v] for row in self.mult)

    def vertex_marks(self) -> list[int]:
        """Marks in vertex order (unsorted)."""
        n, k = self.n, self.k
        indeg = [0] * n
        for row in self.mult:
            for j, x in enumerate(row):
                indeg[j] += x
        return [k * (n - 1) + sum(self.mult[i]) - indeg[i] for i in range(n)]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.mult]

    def permuted(self, perm: Sequence[int]) -> KDigraph:
        """Relabel so that new vertex ``i`` is old vertex ``perm[i]``."""
        return KDigraph(self.k, tuple(tuple(self.mult[a][b] for b in perm) for a in perm))

    def induced(self, vertices: Sequence[int]) -> KDigraph:
        return self.permuted(vertices)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "adj": self.to_lists()}

    @classmethod
    def from_json(cls, obj: dict) -> KDigraph:
        try:
            n, k, adj = obj["n"], obj["k"], obj["adj"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(ErrorKind.BadDimensions, None, f"missing field {exc}") from None
        return validate_digraph(n, k, adj)

    def to_dot(self, name: str = "D") -> str:
        marks = self.vertex_marks()
        lines = [f"digraph {name} {{", f'  label="k={self.k}";']
        for i in range(self.n):
            lines.append(f'  v{i + 1} [label="v{i + 1} ({marks[i]})"];')
        for i in range(self.n):
            for j in range(self.n):
                for _ in range(self.mult[i][j]):
                    lines.append(f"  v{i + 1} -> v{j + 1};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_matrix_text(self) -> str:
        out = [f"{self.n} {self.k}"]
        out.extend(" ".join(str(x) for x in row) for row in self.mult)
        return "\n".join(out) + "\n"

    @classmethod
    def from_matrix_text(cls, text: str) -> KDigraph:
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise ValidationError(ErrorKind.BadDimensions, None, "first line must be 'n k'")
        try:
            n, k = int(rows[0][0]), int(rows[0][1])
            adj = [[int(x) for x in r] for r in rows[1:]]
        except ValueError as exc:
            raise ValidationError(ErrorKind.BadDimensions, None, str(exc)) from None
        return validate_digraph(n, k, adj)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def validate_digraph(n: int, k: int, raw) -> KDigraph:
    """Build a KDigraph from a raw integer matrix, raising ValidationError on any defect."""
    _check_k(k)
    if not isinstance(n, int) or n < 1 or n > MAX_N:
        raise ValidationError(ErrorKind.BadDimensions, None, f"bad vertex count {n!r}")
    try:
        rows = [list(r) for r in raw]
    except TypeError:
        raise ValidationError(ErrorKind.BadDimensions, None, "adjacency must be a list of rows") from None
    if len(rows) != n:
        raise ValidationError(ErrorKind.BadDimensions, None, f"{len(rows)} rows for n={n}")
    for i, row in enumerate(rows):
        if any(not isinstance(x, int) or isinstance(x, bool) for x in row):
            raise ValidationError(ErrorKind.BadDimensions, i, "non-integer entry")
    return KDigraph(k, tuple(tuple(r) for r in rows))


def compute_marks(d: KDigraph) -> MarkSequence:
    return MarkSequence(d.vertex_marks(), d.k)


@dataclass(frozen=True)
class MarkSequence:
    """Non-decreasing sequence of marks together with the arc bound ``k``.

    Unsorted input is sorted on construction and ``sort_applied`` records
    that a reordering happened.
    """

    entries: tuple[int, ...]
    k: int
    sort_applied: bool = field(default=False, compare=False)

    def __post_init__(self):
        _check_k(self.k)
        entries = tuple(int(x) for x in self.entries)
        n = len(entries)
        if n < 1 or n > MAX_N:
            raise ValidationError(ErrorKind.BadDimensions, None, f"need 1 <= n <= {MAX_N}, got {n}")
        bound = 2 * self.k * (n - 1)
        for i, p in enumerate(entries):
            if p < 0:
                raise ValidationError(ErrorKind.NegativeEntry, i, f"{p} < 0")
            if p > bound:
                raise ValidationError(ErrorKind.EntryAboveBound, i, f"{p} > 2k(n-1) = {bound}")
        ordered = tuple(sorted(entries))
        object.__setattr__(self, "entries", ordered)
        if ordered != entries:
            object.__setattr__(self, "sort_applied", True)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def total(self) -> int:
        return sum(self.entries)

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.entries)) + "]"


def parse_sequence(text: str, k: int) -> MarkSequence:
    """Parse ``"1,3,9"`` (commas and/or whitespace) into a MarkSequence."""
    _check_k(k)
    tokens = [t for t in text.replace(",", " ").split() if t]
    if not tokens:
        raise ValidationError(ErrorKind.BadDimensions, None, "empty sequence")
    values = []
    for i, tok in enumerate(tokens):
        try:
            values.append(int(tok))
        except ValueError:
            raise ValidationError(ErrorKind.BadDimensions, i, f"not an integer: {tok!r}") from None
    return MarkSequence(tuple(values), k)


def sequence_from_lines(lines: Iterable[str], k: int) -> MarkSequence:
    """One integer per line; blank lines and ``#`` comments are skipped."""
    kept = [ln.split("#", 1)[0].strip() for ln in lines]
    return parse_sequence(" ".join(x for x in kept if x), k)
