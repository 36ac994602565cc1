"""Difference-bound matrices: representation, closure and the semantic tests.

Node 0 is the constant-zero variable; nodes ``1..dim-1`` are program
variables.  Entry ``m[i, j]`` bounds the constraint ``v_j - v_i <= m[i, j]``.
A matrix is plain immutable data and may denote the empty set; emptiness is
a query (:func:`is_empty`), never a construction error.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .bound import INF, Bound, Interval, add, fmt


@dataclass(frozen=True, eq=False)
class Dbm:
    dim: int
    entries: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("a DBM needs at least the zero variable (dim >= 1)")
        if len(self.entries) != self.dim * self.dim:
            raise ValueError(f"expected {self.dim * self.dim} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Bound]]) -> Dbm:
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("DBM rows must form a square matrix")
        return cls(dim, tuple(x for r in rows for x in r))

    def __getitem__(self, ij) -> Bound:
        i, j = ij
        return self.entries[i * self.dim + j]

    def rows(self) -> list[list[Bound]]:
        n = self.dim
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __eq__(self, other):
        if not isinstance(other, Dbm):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, self.entries))

    def dump(self) -> str:
        """Rows of bounds separated by spaces, ``inf`` for +infinity."""
        return "\n".join(" ".join(fmt(x) for x in row) for row in self.rows())

    def __repr__(self):
        return f"{type(self).__name__}({self.rows()!r})"


class ClosedDbm(Dbm):
    """A DBM in shortest-path closed form: zero diagonal, triangle inequality.

    Only :func:`close` and operators known to preserve closure build these.
    """


def new_top(dim: int) -> Dbm:
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return Dbm(dim, (INF,) * (dim * dim))


def from_constraints(dim: int, constraints: Iterable[tuple[int, int, Bound]]) -> Dbm:
    """Matrix of ``(i, j, c)`` triples meaning ``v_j - v_i <= c``; duplicates keep the min."""
    cells = [INF] * (dim * dim)
    for i, j, c in constraints:
        if not (0 <= i < dim and 0 <= j < dim):
            raise IndexError(f"constraint index ({i}, {j}) out of range for dim {dim}")
        k = i * dim + j
        if c < cells[k]:
            cells[k] = c
    return Dbm(dim, tuple(cells))


def _floyd_warshall(m: Dbm) -> Optional[list[list[Bound]]]:
    # Returns None as soon as a strictly negative cycle shows up on the
    # diagonal; stopping early also keeps the values from running away.
    n = m.dim
    d = m.rows()
    for k in range(n):
        dk = d[k]
        for i in range(n):
            di = d[i]
            dik = di[k]
            if dik == INF:
                continue
            for j in range(n):
                dkj = dk[j]
                if dkj == INF:
                    continue
                s = add(dik, dkj)
                if s < di[j]:
                    di[j] = s
        if any(d[i][i] < 0 for i in range(n)):
            return None
    return d


def close(m: Dbm) -> Optional[ClosedDbm]:
    """Shortest-path closure, or ``None`` when the matrix denotes the empty set."""
    if isinstance(m, ClosedDbm):
        return m
    d = _floyd_warshall(m)
    if d is None:
        return None
    for i in range(m.dim):
        d[i][i] = 0
    return ClosedDbm.from_rows(d)


def is_empty(m: Dbm) -> bool:
    if isinstance(m, ClosedDbm):
        return False
    return _floyd_warshall(m) is None


def is_closed(m: Dbm) -> bool:
    """Check the closed-form invariants directly (no closure is computed)."""
    n = m.dim
    for i in range(n):
        if m[i, i] != 0:
            return False
        for j in range(n):
            for k in range(n):
                if m[i, j] > add(m[i, k], m[k, j]):
                    return False
    return True


def _check_dims(m: Dbm, n: Dbm):
    if m.dim != n.dim:
        raise ValueError(f"dimension mismatch: {m.dim} vs {n.dim}")


def leq(m: Dbm, n: Dbm) -> bool:
    """Point-wise order on matrices."""
    _check_dims(m, n)
    return all(a <= b for a, b in zip(m.entries, n.entries))


def includes(m: Dbm, n: Dbm) -> bool:
    """Whether the set denoted by ``m`` is a subset of the one denoted by ``n``."""
    _check_dims(m, n)
    mc = close(m)
    if mc is None:
        return True
    if is_empty(n):
        return False
    return leq(mc, n)


def sem_equal(m: Dbm, n: Dbm) -> bool:
    _check_dims(m, n)
    mc, nc = close(m), close(n)
    if mc is None or nc is None:
        return mc is None and nc is None
    return mc.entries == nc.entries


def project(m: Dbm, k: int) -> Interval:
    if not 1 <= k < m.dim:
        raise IndexError(f"variable index {k} out of range 1..{m.dim - 1}")
    mc = close(m)
    if mc is None:
        return Interval.EMPTY
    return Interval(-mc[k, 0], mc[0, k])
