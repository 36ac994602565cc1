"""Forward fixpoint computation over control-flow graphs.

Ascending phase: a worklist ordered by reverse postorder.  At widening
points (targets of DFS back edges) the first ``widening_delay`` changes
after the initial value are plain joins, after which the stored value becomes ``old widen close(new)``.
The widened accumulator is kept as is and never closed, otherwise the
iteration may not terminate.  Descending phase: up to ``descending_steps``
sweeps of ``old narrow close(new)``.
"""
from __future__ import annotations

import heapq
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import domain as dom
from . import interval as box
from .bound import BOTTOM, Interval
from .dbm import close, includes, project, sem_equal
from .frontend import (Cfg, ProductCfg, Program, build_cfg, format_point,
                       interleave, normalize_condition)
from .syntax import Assign, BinOp, Const, Neg, Not, Skip

Graph = Union[Cfg, ProductCfg]


@dataclass(frozen=True)
class AnalysisOptions:
    domain: str = "dbm"            # "dbm" or "interval"
    widening_delay: int = 1
    descending_steps: int = 2
    coefficients: str = "integer"  # "integer" or "rational"

    def __post_init__(self):
        if self.domain not in ("dbm", "interval"):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.coefficients not in ("integer", "rational"):
            raise ValueError(f"unknown coefficient mode {self.coefficients!r}")
        if self.widening_delay < 0 or self.descending_steps < 0:
            raise ValueError("widening delay and descending steps must be >= 0")


@dataclass(frozen=True)
class AssertVerdict:
    line: int
    verdict: str  # "proved" or "unknown"


@dataclass
class AnalysisResult:
    graph: Graph
    values: dict
    names: tuple
    domain: str
    asserts: list = field(default_factory=list)
    iterations: int = 0

    def constraints(self, node) -> list[str]:
        v = self.values[node]
        if self.domain == "dbm":
            return dom.to_constraints(v, self.names)
        return box_constraints(v, self.names)

    def table(self) -> dict[str, list[str]]:
        return {format_point(n): self.constraints(n) for n in self.graph.nodes}

    @property
    def all_proved(self) -> bool:
        return all(a.verdict == "proved" for a in self.asserts)


def box_constraints(env, names) -> list[str]:
    if env is BOTTOM:
        return ["bottom"]
    out = []
    for name, itv in zip(names, env.intervals):
        line = dom.render_range(name, itv.lo, itv.hi)
        if line:
            out.append(line)
    return out


# -- domain adapters ---------------------------------------------------------

def _rational_expr(e):
    if isinstance(e, Const):
        return Const(Fraction(e.value))
    if isinstance(e, Neg):
        return Neg(_rational_expr(e.arg))
    if isinstance(e, BinOp):
        return BinOp(e.op, _rational_expr(e.left), _rational_expr(e.right))
    return e


class DbmOps:
    def __init__(self, integer: bool = True):
        self.integer = integer
        self._conds = {}

    def top(self, dim):
        return dom.top(dim)

    def condition(self, cond):
        if cond not in self._conds:
            self._conds[cond] = normalize_condition(cond, integer=self.integer)
        return self._conds[cond]

    def transfer(self, value, label):
        value = dom.normalize(value)
        if value is BOTTOM or isinstance(label, Skip):
            return value
        if isinstance(label, Assign):
            e = label.expr if self.integer else _rational_expr(label.expr)
            return dom.assign(value, label.target.index, e)
        return dom.apply_condition(value, self.condition(label.cond))

    normalize = staticmethod(dom.normalize)
    join = staticmethod(dom.join)

    @staticmethod
    def widen(old, new):
        out = dom.widen(old, dom.normalize(new))
        # an empty accumulator is stored as BOTTOM, never closed otherwise
        if out is not BOTTOM and close(out) is None:
            return BOTTOM
        return out

    @staticmethod
    def narrow(old, new):
        return dom.normalize(dom.narrow(old, dom.normalize(new)))

    @staticmethod
    def equal(a, b):
        if a is BOTTOM or b is BOTTOM:
            return a is b
        return sem_equal(a, b)

    def refuted(self, value, cond) -> bool:
        """True when no point of ``value`` can violate ``cond``."""
        return dom.normalize(dom.apply_condition(value, self.condition(Not(cond)))) is BOTTOM


class BoxOps:
    def __init__(self, integer: bool = True):
        self.integer = integer
        self._conds = {}

    def top(self, dim):
        return box.Box.top(dim - 1)

    def condition(self, cond):
        if cond not in self._conds:
            self._conds[cond] = normalize_condition(cond, integer=self.integer)
        return self._conds[cond]

    def transfer(self, value, label):
        if value is BOTTOM or isinstance(label, Skip):
            return value
        if isinstance(label, Assign):
            e = label.expr if self.integer else _rational_expr(label.expr)
            return value.replace(label.target.index, box.iv_eval(e, value))
        return box.box_condition(value, self.condition(label.cond))

    @staticmethod
    def normalize(v):
        return v

    join = staticmethod(box.box_join)
    widen = staticmethod(box.box_widen)
    narrow = staticmethod(box.box_narrow)

    @staticmethod
    def equal(a, b):
        return a == b

    def refuted(self, value, cond) -> bool:
        return box.box_condition(value, self.condition(Not(cond))) is BOTTOM


def make_ops(opts: AnalysisOptions):
    integer = opts.coefficients == "integer"
    return DbmOps(integer) if opts.domain == "dbm" else BoxOps(integer)


# -- graph traversal ---------------------------------------------------------

def _successors(g: Graph) -> dict:
    succ = {n: [] for n in g.nodes}
    for e in g.edges:
        succ[e.src].append(e)
    return succ


def _predecessors(g: Graph) -> dict:
    pred = {n: [] for n in g.nodes}
    for e in g.edges:
        pred[e.dst].append(e)
    return pred


def _dfs(g: Graph):
    """Reverse postorder of the nodes reachable from the entry, and back-edge targets."""
    succ = {n: [e.dst for e in es] for n, es in _successors(g).items()}
    postorder, heads = [], set()
    on_stack, visited = set(), {g.entry}
    stack = [(g.entry, iter(succ[g.entry]))]
    on_stack.add(g.entry)
    while stack:
        node, it = stack[-1]
        for nxt in it:
            if nxt in on_stack:
                heads.add(nxt)
            elif nxt not in visited:
                visited.add(nxt)
                on_stack.add(nxt)
                stack.append((nxt, iter(succ[nxt])))
                break
        else:
            stack.pop()
            on_stack.discard(node)
            postorder.append(node)
    return postorder[::-1], heads


def select_widening_points(g: Graph) -> set:
    """Targets of back edges of a depth-first traversal; they cut every cycle."""
    return _dfs(g)[1]


# -- fixpoint ----------------------------------------------------------------

def analyze(g: Graph, init, opts: AnalysisOptions = AnalysisOptions(),
            names: Optional[tuple] = None, ops=None) -> AnalysisResult:
    """Invariants at every node of ``g`` starting from ``init`` at the entry."""
    ops = ops or make_ops(opts)
    order, heads = _dfs(g)
    rank = {n: i for i, n in enumerate(order)}
    pred = _predecessors(g)
    succ = _successors(g)
    values = {n: BOTTOM for n in g.nodes}
    visits = dict.fromkeys(heads, 0)

    def incoming(n):
        acc = init if n == g.entry else BOTTOM
        for e in pred[n]:
            if e.src in rank:
                acc = ops.join(acc, ops.transfer(values[e.src], e.label))
        return acc

    iterations = 0
    work = [rank[g.entry]]
    queued = {g.entry}
    while work:
        n = order[heapq.heappop(work)]
        queued.discard(n)
        iterations += 1
        old = values[n]
        new = ops.join(old, incoming(n))
        if ops.equal(old, new):
            continue
        if n in heads and old is not BOTTOM:
            # the first value is not a join; count only genuine joins
            visits[n] += 1
            if visits[n] > opts.widening_delay:
                new = ops.widen(old, new)
        values[n] = new
        for e in succ[n]:
            if e.dst not in queued:
                queued.add(e.dst)
                heapq.heappush(work, rank[e.dst])

    for _ in range(opts.descending_steps):
        changed = False
        for n in order:
            new = ops.narrow(values[n], incoming(n))
            if not ops.equal(values[n], new):
                changed = True
            values[n] = new
        if not changed:
            break

    values = {n: ops.normalize(v) for n, v in values.items()}
    result = AnalysisResult(g, values, tuple(names or ()), opts.domain, iterations=iterations)
    result.asserts = check_asserts(g, values, ops)
    return result


def check_asserts(g: Graph, values: dict, ops) -> list[AssertVerdict]:
    out = []
    for site in g.asserts:
        where = site.node
        if not isinstance(g, ProductCfg):
            where = () if where is None else (where,)
        proved = all(ops.refuted(values[n], site.cond) for n in where)
        out.append(AssertVerdict(site.line, "proved" if proved else "unknown"))
    return out


def initial_state(program: Program, opts: AnalysisOptions = AnalysisOptions(), ops=None):
    """State after the ``init`` block; variables it does not set stay unconstrained."""
    ops = ops or make_ops(opts)
    cfg = build_cfg(program.init, "init")
    res = analyze(cfg, ops.top(program.dim), opts, program.variables, ops)
    value = BOTTOM if cfg.exit is None else res.values[cfg.exit]
    return value, res


def analyze_program(program: Program, opts: AnalysisOptions = AnalysisOptions()) -> AnalysisResult:
    ops = make_ops(opts)
    init, init_res = initial_state(program, opts, ops)
    product = interleave([build_cfg(p.body, p.name) for p in program.processes])
    result = analyze(product, init, opts, program.variables, ops)
    result.asserts = init_res.asserts + result.asserts
    return result


@dataclass
class ComparisonRow:
    point: str
    variable: str
    dbm: Interval
    interval: Interval

    @property
    def contained(self) -> bool:
        return self.dbm.issubset(self.interval)


@dataclass
class ComparisonReport:
    rows: list
    strict_points: list  # points where the DBM invariant is strictly smaller than the box
    dbm: AnalysisResult
    interval: AnalysisResult

    @property
    def violations(self) -> list:
        return [r for r in self.rows if not r.contained]


def box_to_dbm(env, dim):
    if env is BOTTOM:
        return BOTTOM
    cells = []
    for k in range(1, dim):
        itv = env[k]
        cells.append((0, k, itv.hi))
        cells.append((k, 0, -itv.lo))
    from .dbm import from_constraints
    return from_constraints(dim, cells)


def compare_domains(program: Program, opts: AnalysisOptions = AnalysisOptions()) -> ComparisonReport:
    """Run both domains with the same options and check DBM results are never worse."""
    dbm_res = analyze_program(program, AnalysisOptions(**{**asdict(opts), "domain": "dbm"}))
    box_res = analyze_program(program, AnalysisOptions(**{**asdict(opts), "domain": "interval"}))
    rows, strict = [], []
    dim = program.dim
    for n in dbm_res.graph.nodes:
        d, b = dbm_res.values[n], box_res.values[n]
        for k, name in enumerate(program.variables, start=1):
            dk = Interval.EMPTY if d is BOTTOM else project(d, k)
            bk = Interval.EMPTY if b is BOTTOM else b[k]
            rows.append(ComparisonRow(format_point(n), name, dk, bk))
        bd = box_to_dbm(b, dim)
        if bd is BOTTOM:
            continue
        if d is BOTTOM or (includes(d, bd) and not sem_equal(d, bd)):
            strict.append(format_point(n))
    return ComparisonReport(rows, strict, dbm_res, box_res)
