import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gen import random_dbm
from dbmlib import BOTTOM, INF, Interval, close, project, widen
from dbmlib.bound import INT64_MAX, NEG_INF
from dbmlib.interval import (Box, box_condition, box_join, box_narrow, box_transfer,
                             box_widen, iv_add, iv_eval, iv_mul, iv_narrow, iv_widen)
from dbmlib.syntax import Assign, BinOp, Compare, Const, Guard, Neg, Var

X = Var("x", 1)


def test_iv_widen_examples():
    assert iv_widen(Interval(0, 1), Interval(0, 2)) == Interval(0, INF)
    assert iv_widen(Interval(0, 5), Interval(0, 5)) == Interval(0, 5)
    assert iv_widen(Interval(0, 5), Interval(-1, 3)) == Interval(NEG_INF, 5)
    with pytest.raises(ValueError):
        iv_widen(Interval.EMPTY, Interval(0, 1))


def test_iv_narrow_replaces_infinite_bounds_only():
    assert iv_narrow(Interval(0, INF), Interval(2, 10)) == Interval(0, 10)
    assert iv_narrow(Interval.TOP, Interval(2, 10)) == Interval(2, 10)
    assert iv_narrow(Interval(0, 5), Interval(2, 3)) == Interval(0, 5)


def test_iv_eval_examples():
    env = Box((Interval(1, 2), Interval(3, 4)))
    y = Var("y", 2)
    assert iv_eval(BinOp("+", X, y), env) == Interval(4, 6)
    assert iv_mul(Interval(-1, 2), Interval(3, 4)) == Interval(-4, 8)
    assert iv_eval(Const(7), env) == Interval(7, 7)
    assert iv_eval(BinOp("-", X, y), env) == Interval(-3, -1)
    assert iv_eval(Neg(X), env) == Interval(-2, -1)
    with pytest.raises(ValueError):
        iv_eval(Const(1), BOTTOM)


def test_infinite_products():
    assert iv_mul(Interval(0, 0), Interval.TOP) == Interval(0, 0)
    assert iv_mul(Interval(1, 2), Interval(0, INF)) == Interval(0, INF)
    assert iv_mul(Interval(-1, 2), Interval(3, INF)) == Interval.TOP


def test_overflow_gives_top():
    big = Interval(INT64_MAX, INT64_MAX)
    assert iv_add(big, Interval(1, 1)) == Interval.TOP
    assert iv_mul(big, Interval(2, 2)) == Interval.TOP


def test_box_transfer_examples():
    env = Box((Interval(0, 9),))
    assert box_transfer(env, Guard(Compare("<=", X, Const(4)))) == Box((Interval(0, 4),))
    assert box_transfer(env, Assign(X, BinOp("+", X, Const(1)))) == Box((Interval(1, 10),))
    assert box_transfer(Box((Interval(5, 9),)), Guard(Compare("<=", X, Const(4)))) is BOTTOM


def test_box_guard_on_differences():
    y = Var("y", 2)
    env = Box((Interval(0, 10), Interval(3, 5)))
    out = box_transfer(env, Guard(Compare("<=", X, y)))
    assert out == Box((Interval(0, 5), Interval(3, 5)))
    out = box_transfer(env, Guard(Compare("==", X, y)))
    assert out == Box((Interval(3, 5), Interval(3, 5)))
    # x != y carries no information
    assert box_transfer(env, Guard(Compare("!=", X, y))) == env


def test_box_lattice():
    a, b = Box((Interval(0, 1),)), Box((Interval(3, 4),))
    assert box_join(a, b) == Box((Interval(0, 4),))
    assert box_join(BOTTOM, a) is a
    assert box_widen(a, b) == Box((Interval(0, INF),))
    assert box_narrow(Box((Interval(0, INF),)), b) == Box((Interval(0, 4),))
    assert box_narrow(a, BOTTOM) is BOTTOM
    with pytest.raises(ValueError):
        Box((Interval.EMPTY,))


def test_box_condition_with_unsupported_atoms():
    from dbmlib.frontend import normalize_condition

    env = Box((Interval(0, 10),))
    cond = normalize_condition(Compare("<", BinOp("*", X, X), Const(4)))
    assert box_condition(env, cond) == env


@st.composite
def intervals(draw):
    lo = draw(st.integers(-20, 20))
    return Interval(lo, lo + draw(st.integers(0, 10)))


@given(intervals(), intervals())
def test_mul_contains_all_products(a, b):
    r = iv_mul(a, b)
    for x in range(a.lo, a.hi + 1):
        for y in range(b.lo, b.hi + 1):
            assert x * y in r
    assert r.lo in {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi}


@given(st.lists(intervals(), min_size=1, max_size=30))
def test_iv_widen_chain_stabilizes(seq):
    x = seq[0]
    changes = 0
    for y in seq[1:]:
        nxt = iv_widen(x, x.hull(y))
        if nxt != x:
            changes += 1
        x = nxt
    assert changes <= 2


def test_dbm_widening_dominates_interval_widening():
    # DBM iterates project inside the interval iterates seeded by projections
    rng = random.Random(3)
    for _ in range(200):
        dim = rng.randint(2, 4)
        m = None
        while m is None:
            m = close(random_dbm(rng, dim, 0.7))
        x = m
        ys = [project(m, k) for k in range(1, dim)]
        for step in range(15):
            n = None
            while n is None:
                n = close(random_dbm(rng, dim, 0.7, -8 - step, 8 + step))
            x = widen(x, n)
            ys = [iv_widen(y, project(n, k)) if not y.is_empty else project(n, k)
                  for k, y in enumerate(ys, start=1)]
            for k in range(1, dim):
                px = project(x, k)
                assert px.is_empty or px.issubset(ys[k - 1])
