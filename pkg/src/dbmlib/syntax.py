"""Abstract syntax shared by the frontend, the domains and the engine."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .bound import Bound


# -- expressions -------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    index: int  # >= 1; node 0 is never a program variable


@dataclass(frozen=True)
class Neg:
    arg: Expr


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "+", "-", "*"
    left: Expr
    right: Expr


Expr = Union[Const, Var, Neg, BinOp]


def linear_form(e: Expr) -> Optional[tuple[dict[int, int], int]]:
    """``(coefficients by variable index, constant)`` or None if ``e`` is not linear."""
    if isinstance(e, Const):
        return {}, e.value
    if isinstance(e, Var):
        return {e.index: 1}, 0
    if isinstance(e, Neg):
        inner = linear_form(e.arg)
        if inner is None:
            return None
        coefs, c = inner
        return {k: -v for k, v in coefs.items()}, -c
    left, right = linear_form(e.left), linear_form(e.right)
    if left is None or right is None:
        return None
    if e.op == "*":
        (lc, lk), (rc, rk) = left, right
        if lc and rc:
            return None
        if not lc:
            lc, lk, rc, rk = rc, rk, lc, lk
        # now the right operand is the constant rk
        return {k: v * rk for k, v in lc.items() if v * rk}, lk * rk
    sign = 1 if e.op == "+" else -1
    coefs = dict(left[0])
    for k, v in right[0].items():
        coefs[k] = coefs.get(k, 0) + sign * v
    return {k: v for k, v in coefs.items() if v}, left[1] + sign * right[1]


# -- source conditions -------------------------------------------------------

@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Compare:
    op: str  # "<", "<=", "==", "!=", ">=", ">"
    left: Expr
    right: Expr


@dataclass(frozen=True)
class And:
    left: Cond
    right: Cond


@dataclass(frozen=True)
class Or:
    left: Cond
    right: Cond


@dataclass(frozen=True)
class Not:
    arg: Cond


Cond = Union[BoolConst, Compare, And, Or, Not]

TRUE = BoolConst(True)
FALSE = BoolConst(False)


# -- guard atoms (leaves of normalized conditions) ---------------------------

@dataclass(frozen=True)
class DiffAtom:
    """``v_j - v_i <= bound`` (or ``==`` when ``equality``); index 0 is the zero variable."""

    j: int
    i: int
    bound: Bound
    equality: bool = False

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("a difference atom needs two distinct nodes")


def upper(j: int, c) -> DiffAtom:
    """``v_j <= c``"""
    return DiffAtom(j, 0, c)


def lower(i: int, c) -> DiffAtom:
    """``-v_i <= c``"""
    return DiffAtom(0, i, c)


@dataclass(frozen=True)
class Unsupported:
    """A test the domain cannot express; carries no information."""

    source: Optional[Compare] = field(default=None, compare=False)


GuardAtom = Union[DiffAtom, Unsupported]


# -- CFG edge labels ---------------------------------------------------------

@dataclass(frozen=True)
class Assign:
    target: Var
    expr: Expr


@dataclass(frozen=True)
class Guard:
    cond: Cond  # negation normal form


@dataclass(frozen=True)
class Skip:
    pass


Label = Union[Assign, Guard, Skip]
