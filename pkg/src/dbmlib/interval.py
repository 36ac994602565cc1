"""Non-relational baseline: one interval per variable."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .bound import BOTTOM, INF, INT64_MAX, INT64_MIN, NEG_INF, Interval, _Bottom, check
from .syntax import (And, Assign, BoolConst, Const, Expr, Guard, Neg, Or, Skip,
                     Unsupported, Var)


def iv_widen(a: Interval, b: Interval) -> Interval:
    if a.is_empty or b.is_empty:
        raise ValueError("interval widening is defined on non-empty intervals")
    lo = a.lo if a.lo <= b.lo else NEG_INF
    hi = a.hi if a.hi >= b.hi else INF
    return Interval(lo, hi)


def iv_narrow(a: Interval, b: Interval) -> Interval:
    """Replace only the infinite bounds of ``a``."""
    return Interval(b.lo if a.lo == NEG_INF else a.lo,
                    b.hi if a.hi == INF else a.hi)


def _overflows(x) -> bool:
    return type(x) is int and not INT64_MIN <= x <= INT64_MAX


def _guarded(result: Interval) -> Interval:
    # an overflowing subexpression gives up all information about itself
    if _overflows(result.lo) or _overflows(result.hi):
        return Interval.TOP
    return result


def _mul(x, y):
    if x == 0 or y == 0:
        return 0
    return x * y


def iv_add(a: Interval, b: Interval) -> Interval:
    if a.is_empty or b.is_empty:
        return Interval.EMPTY
    return _guarded(Interval(a.lo + b.lo, a.hi + b.hi))


def iv_neg(a: Interval) -> Interval:
    if a.is_empty:
        return a
    return Interval(-a.hi, -a.lo)


def iv_mul(a: Interval, b: Interval) -> Interval:
    if a.is_empty or b.is_empty:
        return Interval.EMPTY
    products = [_mul(x, y) for x in (a.lo, a.hi) for y in (b.lo, b.hi)]
    return _guarded(Interval(min(products), max(products)))


def eval_expr(e: Expr, lookup: Callable[[int], Interval]) -> Interval:
    """Interval enclosure of ``e`` given the range of each variable index."""
    if isinstance(e, Const):
        return Interval(e.value, e.value)
    if isinstance(e, Var):
        return lookup(e.index)
    if isinstance(e, Neg):
        return iv_neg(eval_expr(e.arg, lookup))
    left, right = eval_expr(e.left, lookup), eval_expr(e.right, lookup)
    if e.op == "+":
        return iv_add(left, right)
    if e.op == "-":
        return iv_add(left, iv_neg(right))
    return iv_mul(left, right)


@dataclass(frozen=True)
class Box:
    """Interval of each program variable; ``intervals[k - 1]`` is variable ``k``."""

    intervals: tuple

    def __post_init__(self):
        if any(i.is_empty for i in self.intervals):
            raise ValueError("a box never holds an empty interval; use BOTTOM")

    @classmethod
    def top(cls, nvars: int) -> Box:
        return cls((Interval.TOP,) * nvars)

    def __getitem__(self, k: int) -> Interval:
        return self.intervals[k - 1]

    def replace(self, k: int, value: Interval) -> BoxEnv:
        if value.is_empty:
            return BOTTOM
        items = list(self.intervals)
        items[k - 1] = value
        return Box(tuple(items))

    def __len__(self):
        return len(self.intervals)


BoxEnv = Union[Box, _Bottom]


def iv_eval(e: Expr, env: Box) -> Interval:
    if env is BOTTOM:
        raise ValueError("cannot evaluate over the empty environment")
    return eval_expr(e, env.__getitem__)


def box_join(a: BoxEnv, b: BoxEnv) -> BoxEnv:
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return Box(tuple(x.hull(y) for x, y in zip(a.intervals, b.intervals)))


def box_widen(a: BoxEnv, b: BoxEnv) -> BoxEnv:
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return Box(tuple(iv_widen(x, y) for x, y in zip(a.intervals, b.intervals)))


def box_narrow(a: BoxEnv, b: BoxEnv) -> BoxEnv:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return Box(tuple(iv_narrow(x, y) for x, y in zip(a.intervals, b.intervals)))


def box_leq(a: BoxEnv, b: BoxEnv) -> bool:
    if a is BOTTOM:
        return True
    if b is BOTTOM:
        return False
    return all(x.issubset(y) for x, y in zip(a.intervals, b.intervals))


def _range(env: Box, k: int) -> Interval:
    return Interval(0, 0) if k == 0 else env[k]


def _refine_diff(env: Box, j: int, i: int, c) -> BoxEnv:
    # v_j - v_i <= c  =>  v_j <= hi(v_i) + c  and  v_i >= lo(v_j) - c
    vj, vi = _range(env, j), _range(env, i)
    new_j = vj.intersect(Interval(NEG_INF, vi.hi + c if vi.hi != INF else INF))
    new_i = vi.intersect(Interval(vj.lo - c if vj.lo != NEG_INF else NEG_INF, INF))
    if new_j.is_empty or new_i.is_empty:
        return BOTTOM
    if j:
        env = env.replace(j, new_j)
    if i:
        env = env.replace(i, new_i)
    return env


def box_guard(env: BoxEnv, atom) -> BoxEnv:
    if env is BOTTOM:
        return BOTTOM
    if isinstance(atom, Unsupported):
        return env
    if isinstance(atom, BoolConst):
        return env if atom.value else BOTTOM
    out = _refine_diff(env, atom.j, atom.i, atom.bound)
    if atom.equality and out is not BOTTOM:
        out = _refine_diff(out, atom.i, atom.j, check(-atom.bound))
    return out


def box_condition(env: BoxEnv, cond) -> BoxEnv:
    if env is BOTTOM:
        return BOTTOM
    if isinstance(cond, And):
        return box_condition(box_condition(env, cond.left), cond.right)
    if isinstance(cond, Or):
        return box_join(box_condition(env, cond.left), box_condition(env, cond.right))
    return box_guard(env, cond)


def box_transfer(env: BoxEnv, label, integer: bool = True) -> BoxEnv:
    """Post-image of an edge label; refinement to an empty interval gives BOTTOM."""
    from .frontend import normalize_condition

    if env is BOTTOM or isinstance(label, Skip):
        return env
    if isinstance(label, Assign):
        return env.replace(label.target.index, iv_eval(label.expr, env))
    if isinstance(label, Guard):
        return box_condition(env, normalize_condition(label.cond, integer=integer))
    raise TypeError(f"unknown edge label {label!r}")


def box_from_intervals(intervals: Sequence[Interval]) -> BoxEnv:
    if any(i.is_empty for i in intervals):
        return BOTTOM
    return Box(tuple(intervals))
