import random
from fractions import Fraction

import pytest
from hypothesis import given

import oracles
from gen import dbms, pairs, random_dbm
from dbmlib import (INF, ClosedDbm, CoefficientOverflow, Dbm, Interval, close,
                    from_constraints, includes, is_empty, leq, new_top, project, sem_equal)
from dbmlib.dbm import is_closed

# running example: indices 0, 1, 2 stand for the zero variable, v2 and v3
EXAMPLE = [[INF, 4, 3], [-1, INF, INF], [-1, 1, INF]]
LOOSE_TWIN = [[0, 5, 3], [-1, INF, INF], [-1, 1, INF]]
PARTIAL_CLOSURE = [[0, 4, 3], [-1, 0, INF], [-1, 1, 0]]


def example():
    return Dbm.from_rows(EXAMPLE)


def test_new_top():
    assert new_top(1).rows() == [[INF]]
    assert all(x == INF for x in new_top(3).entries)
    assert len(oracles.points(new_top(3), -2, 2)) == 25
    with pytest.raises(ValueError):
        new_top(0)


def test_from_constraints_example():
    cs = [(0, 1, 4), (1, 0, -1), (0, 2, 3), (2, 0, -1), (2, 1, 1)]
    assert from_constraints(3, cs).rows() == EXAMPLE


def test_from_constraints_min_collapse_and_errors():
    assert from_constraints(2, [(0, 1, 5), (0, 1, 4)])[0, 1] == 4
    assert from_constraints(3, []) == new_top(3)
    with pytest.raises(IndexError):
        from_constraints(2, [(0, 2, 1)])


def test_shape_checks():
    with pytest.raises(ValueError):
        Dbm(2, (0, 0, 0))
    with pytest.raises(ValueError):
        Dbm.from_rows([[0, 1], [2]])


def test_is_empty_examples():
    assert not is_empty(example())
    assert is_empty(from_constraints(2, [(0, 1, -1), (1, 0, 0)]))
    assert not is_empty(from_constraints(2, [(0, 1, 1), (1, 0, -1)]))
    assert is_empty(Dbm.from_rows([[-1]]))


def test_close_example():
    c = close(example())
    assert isinstance(c, ClosedDbm)
    assert [c[i, i] for i in range(3)] == [0, 0, 0]
    assert c[1, 2] == 2                      # v3 - v2 <= -1 + 3
    assert c.rows() == oracles.shortest_paths(example())
    assert is_closed(c)


def test_partial_closure_misses_one_tightened_entry():
    # fixing only the diagonal keeps (v2, v3) at +inf; the closure tightens it to 2
    c = close(example()).rows()
    diff = [(i, j) for i in range(3) for j in range(3) if c[i][j] != PARTIAL_CLOSURE[i][j]]
    assert diff == [(1, 2)]


def test_close_idempotent_on_closed():
    c = close(example())
    assert close(c) is c


def test_close_empty_returns_none():
    assert close(from_constraints(2, [(0, 1, -1), (1, 0, 0)])) is None


def test_incomparable_but_equal_meaning():
    a, b = example(), Dbm.from_rows(LOOSE_TWIN)
    assert not leq(a, b) and not leq(b, a)
    assert includes(a, b) and includes(b, a)
    assert sem_equal(a, b)
    assert close(a) == close(b)
    assert not sem_equal(a, new_top(3))


def test_leq_examples():
    m = example()
    assert leq(m, m)
    assert leq(close(m), m)
    with pytest.raises(ValueError):
        leq(m, new_top(2))


def test_includes_edge_cases():
    empty = from_constraints(3, [(0, 1, -1), (1, 0, 0)])
    assert includes(example(), new_top(3))
    assert includes(empty, example())
    assert not includes(example(), empty)
    other_empty = from_constraints(3, [(1, 2, -3), (2, 1, 1)])
    assert sem_equal(empty, other_empty)


def test_project():
    assert project(example(), 1) == Interval(1, 4)
    assert project(example(), 2) == Interval(1, 3)
    assert project(new_top(3), 2) == Interval.TOP
    assert project(from_constraints(2, [(0, 1, -1), (1, 0, 0)]), 1).is_empty
    for k in (0, 3):
        with pytest.raises(IndexError):
            project(example(), k)


def test_dump():
    assert example().dump() == "inf 4 3\n-1 inf inf\n-1 1 inf"


def test_rational_coefficients():
    m = from_constraints(2, [(0, 1, Fraction(7, 2)), (1, 0, Fraction(-1, 3))])
    c = close(m)
    assert c[0, 1] == Fraction(7, 2)
    assert project(m, 1) == Interval(Fraction(1, 3), Fraction(7, 2))


def test_overflow_is_reported():
    big = 2**62
    m = from_constraints(3, [(0, 1, big), (1, 2, big)])
    with pytest.raises(CoefficientOverflow):
        close(m)


def test_emptiness_agrees_with_bellman_ford_seeded():
    rng = random.Random(7)
    for _ in range(300):
        m = random_dbm(rng, rng.randint(1, 5), rng.uniform(0.3, 0.8))
        assert is_empty(m) == oracles.bellman_ford_empty(m)


@given(dbms())
def test_close_matches_path_enumeration(m):
    c = close(m)
    if c is None:
        assert oracles.bellman_ford_empty(m)
    else:
        assert c.rows() == oracles.shortest_paths(m)


@given(dbms())
def test_close_preserves_points(m):
    assert oracles.points(m, -6, 6) == oracles.points(close(m), -6, 6)


@given(pairs())
def test_close_monotone(mn):
    m, n = mn
    cm, cn = close(m), close(n)
    if cm is not None and cn is not None and leq(m, n):
        assert leq(cm, cn)


@given(pairs())
def test_leq_implies_includes(mn):
    m, n = mn
    if leq(m, n):
        assert includes(m, n)


@given(pairs())
def test_includes_matches_enumeration_on_boxes(mn):
    m, n = mn
    # restrict both to a box so that the finite enumeration is the whole meaning
    box = [(0, k, 5) for k in range(1, m.dim)] + [(k, 0, 5) for k in range(1, m.dim)]
    m = from_constraints(m.dim, [(i, j, m[i, j]) for i in range(m.dim)
                                 for j in range(m.dim) if m[i, j] != INF] + box)
    n = from_constraints(n.dim, [(i, j, n[i, j]) for i in range(n.dim)
                                 for j in range(n.dim) if n[i, j] != INF] + box)
    assert includes(m, n) == (oracles.points(m, -5, 5) <= oracles.points(n, -5, 5))
