"""Lattice operators and transfer functions over DBMs extended with a bottom.

An abstract element is either :data:`BOTTOM` or a :class:`~dbmlib.dbm.Dbm`.
A matrix may still denote the empty set; only the normalized form
(``BOTTOM`` or a :class:`~dbmlib.dbm.ClosedDbm`) is canonical.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from . import interval as iv
from .bound import BOTTOM, INF, NEG_INF, _Bottom, add, check, fmt
from .dbm import ClosedDbm, Dbm, close, new_top, project
from .syntax import And, BoolConst, DiffAtom, Expr, Or, Unsupported, linear_form


Element = Union[Dbm, _Bottom]
Normalized = Union[ClosedDbm, _Bottom]


def normalize(a: Element) -> Normalized:
    if a is BOTTOM:
        return BOTTOM
    c = close(a)
    return BOTTOM if c is None else c


def top(dim: int) -> Dbm:
    return new_top(dim)


def _pointwise(a: Dbm, b: Dbm, f, cls=Dbm) -> Dbm:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return cls(a.dim, tuple(f(x, y) for x, y in zip(a.entries, b.entries)))


def meet(a: Element, b: Element) -> Element:
    """Exact intersection: point-wise min (the result is generally not closed)."""
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return _pointwise(a, b, min)


def join(a: Element, b: Element) -> Normalized:
    """Best convex over-approximation of the union; closes both arguments first."""
    a, b = normalize(a), normalize(b)
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return _pointwise(a, b, max, ClosedDbm)


def _widen_entry(x, y):
    return x if y <= x else INF


def widen(a: Element, b: Element) -> Element:
    """Drop every bound of ``a`` that ``b`` does not respect.

    ``b`` should be closed by the caller; the result must not be closed
    before being fed back as the next left argument, otherwise the
    iteration may never stabilize.
    """
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return _pointwise(a, b, _widen_entry)


def narrow(a: Element, b: Element) -> Element:
    """Refine only the infinite entries of ``a`` with those of ``b``."""
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return _pointwise(a, b, lambda x, y: y if x == INF else x)


def _check_var(a: Dbm, k: int):
    if not 1 <= k < a.dim:
        raise IndexError(f"variable index {k} out of range 1..{a.dim - 1}")


def forget(a: Element, k: int) -> Normalized:
    """Remove all information about variable ``k``, keeping implied relations.

    The argument is closed first so that the one-step elimination through
    ``k`` is exact.
    """
    if a is BOTTOM:
        return BOTTOM
    _check_var(a, k)
    m = close(a)
    if m is None:
        return BOTTOM
    n = m.dim
    rows = m.rows()
    out = [[INF] * n for _ in range(n)]
    for i in range(n):
        if i == k:
            continue
        rik = rows[i][k]
        for j in range(n):
            if j == k:
                continue
            out[i][j] = min(rows[i][j], add(rik, rows[k][j]))
    out[k][k] = 0
    return ClosedDbm.from_rows(out)


def _tighten(a: Dbm, i: int, j: int, c) -> Dbm:
    k = i * a.dim + j
    if c >= a.entries[k]:
        return a
    cells = list(a.entries)
    cells[k] = c
    return Dbm(a.dim, tuple(cells))


def guard(a: Element, atom) -> Element:
    """Restrict ``a`` to the points satisfying one guard atom."""
    if a is BOTTOM:
        return BOTTOM
    if isinstance(atom, Unsupported):
        return a
    if isinstance(atom, BoolConst):
        return a if atom.value else BOTTOM
    if atom.i >= a.dim or atom.j >= a.dim:
        raise IndexError(f"guard {atom} out of range for dim {a.dim}")
    out = _tighten(a, atom.i, atom.j, atom.bound)
    if atom.equality:
        out = _tighten(out, atom.j, atom.i, check(-atom.bound))
    return out


def apply_condition(a: Element, cond) -> Element:
    """Guard by a normalized condition tree (atoms joined by And/Or).

    Conjunctions apply their guards in sequence; disjunctions join the
    results of each branch.
    """
    if a is BOTTOM:
        return BOTTOM
    if isinstance(cond, And):
        return apply_condition(apply_condition(a, cond.left), cond.right)
    if isinstance(cond, Or):
        return join(apply_condition(a, cond.left), apply_condition(a, cond.right))
    return guard(a, cond)


def _shift(a: Dbm, k: int, c) -> Dbm:
    # v_k <- v_k + c: row k loses c, column k gains c, (k, k) untouched
    n = a.dim
    rows = a.rows()
    for j in range(n):
        if j != k and rows[k][j] != INF:
            rows[k][j] = check(rows[k][j] - c)
    for i in range(n):
        if i != k and rows[i][k] != INF:
            rows[i][k] = check(rows[i][k] + c)
    cls = ClosedDbm if isinstance(a, ClosedDbm) else Dbm
    return cls.from_rows(rows)


def assign(a: Element, k: int, e: Expr) -> Element:
    """Abstract ``v_k <- e``; exact when ``e`` is ``v_j + c`` or a constant."""
    if a is BOTTOM:
        return BOTTOM
    _check_var(a, k)
    lin = linear_form(e)
    if lin is not None:
        coefs, c = lin
        if not coefs:
            return _assign_offset(a, k, 0, c)
        if len(coefs) == 1:
            (j, coef), = coefs.items()
            if coef == 1:
                if j == k:
                    return _shift(a, k, c)
                return _assign_offset(a, k, j, c)
    m = close(a)
    if m is None:
        return BOTTOM
    value = iv.eval_expr(e, lambda idx: project(m, idx))
    out = forget(m, k).rows()
    if value.is_empty:
        return BOTTOM
    out[0][k] = value.hi
    out[k][0] = INF if value.lo == NEG_INF else -value.lo
    return Dbm.from_rows(out)


def _assign_offset(a: Dbm, k: int, j: int, c) -> Element:
    # v_k <- v_j + c: forget v_k then v_k - v_j <= c and v_j - v_k <= -c
    out = forget(a, k)
    out = guard(out, DiffAtom(k, j, c))
    return guard(out, DiffAtom(j, k, check(-c)))


def alpha_points(dim: int, points: Iterable[Sequence]) -> Normalized:
    """Smallest normalized element whose meaning contains every point.

    Points list the values of variables ``1..dim-1``; the zero variable is
    implicit.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return BOTTOM
    if any(len(p) != dim - 1 for p in pts):
        raise ValueError(f"every point needs {dim - 1} coordinates")
    rows = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if i != j:
                rows[i][j] = max((p[j - 1] if j else 0) - (p[i - 1] if i else 0) for p in pts)
    return ClosedDbm.from_rows(rows)


def _is_redundant(diff_hi, hi_i, lo_j) -> bool:
    # v_i - v_j <= diff_hi already follows from v_i <= hi_i and v_j >= lo_j
    if diff_hi == INF:
        return True
    if hi_i == INF or lo_j == NEG_INF:
        return False
    return diff_hi >= hi_i - lo_j


def render_range(name: str, lo, hi) -> Optional[str]:
    if lo == NEG_INF and hi == INF:
        return None
    if lo == hi:
        return f"{name} = {fmt(lo)}"
    if lo == NEG_INF:
        return f"{name} <= {fmt(hi)}"
    if hi == INF:
        return f"{name} >= {fmt(lo)}"
    return f"{name} in [{fmt(lo)},{fmt(hi)}]"


def to_constraints(e: Normalized, names: Optional[Sequence[str]] = None) -> list[str]:
    """Readable constraints of a normalized element, ordered by variable index.

    One line per bounded variable, then one line per pair ``v_i - v_j``
    (``i < j``) unless both of its bounds already follow from the variables'
    own ranges.
    """
    if e is BOTTOM:
        return ["bottom"]
    m = e if isinstance(e, ClosedDbm) else close(e)
    if m is None:
        return ["bottom"]
    n = m.dim
    if names is None:
        names = [f"v{k}" for k in range(1, n)]
    lo = [0] + [-m[k, 0] for k in range(1, n)]
    hi = [0] + [m[0, k] for k in range(1, n)]
    out = []
    for k in range(1, n):
        line = render_range(names[k - 1], lo[k], hi[k])
        if line:
            out.append(line)
    for i, j in combinations(range(1, n), 2):
        d_hi = m[j, i]           # v_i - v_j <= m[j][i]
        d_lo = -m[i, j]          # v_j - v_i <= m[i][j]
        if _is_redundant(d_hi, hi[i], lo[j]) and _is_redundant(m[i, j], hi[j], lo[i]):
            continue
        line = render_range(f"{names[i - 1]} - {names[j - 1]}", d_lo, d_hi)
        if line:
            out.append(line)
    return out
