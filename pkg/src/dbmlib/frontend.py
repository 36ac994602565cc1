"""Toy parallel language: parser, printer, control-flow graphs, interleaving.

Grammar::

    program := decl* init? process+          (or decl* init? stmt* for one process)
    decl    := "var" ident ("," ident)* ";"
    init    := "init" block
    process := "process" ident block
    block   := "{" stmt* "}"
    stmt    := ident "=" expr ";" | "if" cond block ("else" block)?
             | "while" cond block | "skip" ";" | "assert" "(" cond ")" ";"
    cond    := "true" | "false" | atom | cond "and" cond | cond "or" cond
             | "not" cond | "(" cond ")"
    atom    := expr ("<" | "<=" | "==" | "!=" | ">=" | ">") expr
    expr    := integer | ident | "-" expr | expr ("+" | "-" | "*") expr | "(" expr ")"

Comments run from ``//`` to the end of the line.  All variables are global
and shared by every process.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .syntax import (FALSE, TRUE, And, Assign, BinOp, BoolConst, Compare, Cond,
                     Const, DiffAtom, Expr, Guard, Label, Neg, Not, Or, Skip,
                     Unsupported, Var, linear_form)

KEYWORDS = {"var", "init", "process", "if", "else", "while", "skip", "assert",
            "true", "false", "and", "or", "not"}
COMPARISONS = ("<=", ">=", "==", "!=", "<", ">")


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


# -- statements --------------------------------------------------------------

@dataclass(frozen=True)
class AssignStmt:
    target: Var
    expr: Expr


@dataclass(frozen=True)
class If:
    cond: Cond
    then: tuple
    orelse: tuple = ()


@dataclass(frozen=True)
class While:
    cond: Cond
    body: tuple


@dataclass(frozen=True)
class SkipStmt:
    pass


@dataclass(frozen=True)
class Assert:
    cond: Cond
    line: int = field(default=0, compare=False)


Stmt = Union[AssignStmt, If, While, SkipStmt, Assert]


@dataclass(frozen=True)
class Process:
    name: str
    body: tuple


@dataclass(frozen=True)
class Program:
    variables: tuple  # names; variable k (1-based) is variables[k - 1]
    init: tuple
    processes: tuple

    @property
    def dim(self) -> int:
        return len(self.variables) + 1


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<space>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op><=|>=|==|!=|[-+*<>=;,(){}])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "kw", "op", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind, value = m.lastgroup, m.group()
        if kind not in ("space", "comment"):
            if kind == "name" and value in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.symbols: dict[str, int] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("kw", "op") and self.tok.text in texts

    def expect(self, text: str) -> Token:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self) -> Token:
        if self.tok.kind != "name":
            raise self.error(f"expected an identifier, found {self.tok.text or 'end of input'!r}")
        tok = self.tok
        self.pos += 1
        return tok

    # program structure

    def program(self) -> Program:
        while self.at("var"):
            self.pos += 1
            while True:
                tok = self.ident()
                if tok.text in self.symbols:
                    raise self.error(f"duplicate declaration of {tok.text!r}", tok)
                self.symbols[tok.text] = len(self.symbols) + 1
                if not self.at(","):
                    break
                self.pos += 1
            self.expect(";")
        init = ()
        if self.at("init"):
            self.pos += 1
            init = self.block()
        processes = []
        if self.at("process"):
            names = set()
            while self.at("process"):
                self.pos += 1
                tok = self.ident()
                if tok.text in names:
                    raise self.error(f"duplicate process {tok.text!r}", tok)
                names.add(tok.text)
                processes.append(Process(tok.text, self.block()))
            if self.tok.kind != "eof":
                raise self.error(f"expected 'process', found {self.tok.text!r}")
        else:
            body = []
            while self.tok.kind != "eof":
                body.append(self.stmt())
            processes.append(Process("main", tuple(body)))
        return Program(tuple(self.symbols), init, tuple(processes))

    def block(self) -> tuple:
        self.expect("{")
        body = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("unterminated block")
            body.append(self.stmt())
        self.expect("}")
        return tuple(body)

    def stmt(self) -> Stmt:
        tok = self.tok
        if self.at("if"):
            self.pos += 1
            cond = self.cond()
            then = self.block()
            orelse = ()
            if self.at("else"):
                self.pos += 1
                orelse = self.block()
            return If(cond, then, orelse)
        if self.at("while"):
            self.pos += 1
            cond = self.cond()
            return While(cond, self.block())
        if self.at("skip"):
            self.pos += 1
            self.expect(";")
            return SkipStmt()
        if self.at("assert"):
            self.pos += 1
            self.expect("(")
            cond = self.cond()
            self.expect(")")
            self.expect(";")
            return Assert(cond, tok.line)
        if tok.kind == "name":
            target = self.variable()
            self.expect("=")
            e = self.expr()
            self.expect(";")
            return AssignStmt(target, e)
        raise self.error(f"expected a statement, found {tok.text or 'end of input'!r}")

    def variable(self) -> Var:
        tok = self.ident()
        if tok.text not in self.symbols:
            raise self.error(f"undeclared variable {tok.text!r}", tok)
        return Var(tok.text, self.symbols[tok.text])

    # conditions: or < and < not < atom

    def cond(self) -> Cond:
        left = self.conj()
        while self.at("or"):
            self.pos += 1
            left = Or(left, self.conj())
        return left

    def conj(self) -> Cond:
        left = self.negation()
        while self.at("and"):
            self.pos += 1
            left = And(left, self.negation())
        return left

    def negation(self) -> Cond:
        if self.at("not"):
            self.pos += 1
            return Not(self.negation())
        if self.at("true", "false"):
            value = self.tok.text == "true"
            self.pos += 1
            return BoolConst(value)
        if self.at("("):
            # either a parenthesized condition or an atom starting with "(expr"
            saved = self.pos
            try:
                return self.atom()
            except ParseError:
                self.pos = saved
            self.pos += 1
            inner = self.cond()
            self.expect(")")
            return inner
        return self.atom()

    def atom(self) -> Compare:
        left = self.expr()
        if not self.at(*COMPARISONS):
            raise self.error(f"expected a comparison, found {self.tok.text or 'end of input'!r}")
        op = self.tok.text
        self.pos += 1
        return Compare(op, left, self.expr())

    # expressions: +,- < * < unary -

    def expr(self) -> Expr:
        left = self.term()
        while self.at("+", "-"):
            op = self.tok.text
            self.pos += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.at("*"):
            self.pos += 1
            left = BinOp("*", left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.at("-"):
            self.pos += 1
            return Neg(self.unary())
        if self.at("("):
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if self.tok.kind == "int":
            value = int(self.tok.text)
            self.pos += 1
            return Const(value)
        if self.tok.kind == "name":
            return self.variable()
        raise self.error(f"expected an expression, found {self.tok.text or 'end of input'!r}")


def parse_program(text: str) -> Program:
    return _Parser(text).program()


# -- printing ----------------------------------------------------------------

_EXPR_PREC = {"+": 1, "-": 1, "*": 2}


def format_expr(e: Expr, prec: int = 0) -> str:
    if isinstance(e, Const):
        s, p = str(e.value), 4
    elif isinstance(e, Var):
        s, p = e.name, 4
    elif isinstance(e, Neg):
        s, p = "-" + format_expr(e.arg, 3), 3
    else:
        p = _EXPR_PREC[e.op]
        # operators are left-associative: the right operand binds one level tighter
        s = f"{format_expr(e.left, p)} {e.op} {format_expr(e.right, p + 1)}"
    return f"({s})" if p < prec else s


def format_cond(c: Cond, prec: int = 0) -> str:
    if isinstance(c, BoolConst):
        s, p = ("true" if c.value else "false"), 4
    elif isinstance(c, Compare):
        s, p = f"{format_expr(c.left)} {c.op} {format_expr(c.right)}", 4
    elif isinstance(c, Not):
        s, p = "not " + format_cond(c.arg, 3), 3
    elif isinstance(c, And):
        s, p = f"{format_cond(c.left, 2)} and {format_cond(c.right, 3)}", 2
    else:
        s, p = f"{format_cond(c.left, 1)} or {format_cond(c.right, 2)}", 1
    return f"({s})" if p < prec else s


def _format_block(stmts, indent: int) -> list[str]:
    pad = "    " * indent
    out = []
    for s in stmts:
        if isinstance(s, AssignStmt):
            out.append(f"{pad}{s.target.name} = {format_expr(s.expr)};")
        elif isinstance(s, SkipStmt):
            out.append(f"{pad}skip;")
        elif isinstance(s, Assert):
            out.append(f"{pad}assert({format_cond(s.cond)});")
        elif isinstance(s, While):
            out.append(f"{pad}while {format_cond(s.cond)} {{")
            out += _format_block(s.body, indent + 1)
            out.append(f"{pad}}}")
        else:
            out.append(f"{pad}if {format_cond(s.cond)} {{")
            out += _format_block(s.then, indent + 1)
            if s.orelse:
                out.append(f"{pad}}} else {{")
                out += _format_block(s.orelse, indent + 1)
            out.append(f"{pad}}}")
    return out


def format_program(program: Program) -> str:
    lines = []
    if program.variables:
        lines.append(f"var {', '.join(program.variables)};")
    if program.init:
        lines.append("init {")
        lines += _format_block(program.init, 1)
        lines.append("}")
    for proc in program.processes:
        lines.append(f"process {proc.name} {{")
        lines += _format_block(proc.body, 1)
        lines.append("}")
    return "\n".join(lines) + "\n"


def format_label(label: Label) -> str:
    if isinstance(label, Assign):
        return f"{label.target.name} <- {format_expr(label.expr)}"
    if isinstance(label, Guard):
        return format_cond(label.cond)
    return "skip"


# -- conditions --------------------------------------------------------------

_NEGATED = {"<": ">=", ">=": "<", "<=": ">", ">": "<=", "==": "!=", "!=": "=="}


def negation_normal_form(c: Cond, negate: bool = False) -> Cond:
    """Push negations into the comparison operators; the result has no Not."""
    if isinstance(c, BoolConst):
        return BoolConst(c.value != negate)
    if isinstance(c, Compare):
        return Compare(_NEGATED[c.op], c.left, c.right) if negate else c
    if isinstance(c, Not):
        return negation_normal_form(c.arg, not negate)
    left = negation_normal_form(c.left, negate)
    right = negation_normal_form(c.right, negate)
    flip = isinstance(c, And) == negate
    return Or(left, right) if flip else And(left, right)


def _atom(c: Compare, integer: bool):
    lin = linear_form(BinOp("-", c.left, c.right))
    if lin is None or c.op == "!=":
        return Unsupported(c)
    coefs, k = lin
    # every comparison becomes  sum(coefs * v) + k  (<= or ==)  0
    if c.op in (">", ">="):
        coefs, k = {v: -a for v, a in coefs.items()}, -k
    if c.op in ("<", ">"):
        if integer:
            k += 1
    if not integer:
        k = Fraction(k)
    equality = c.op == "=="
    if not coefs:
        return BoolConst(k == 0 if equality else k <= 0)
    items = sorted(coefs.items(), key=lambda kv: kv[1], reverse=True)
    if items == [(items[0][0], 1)]:
        return DiffAtom(items[0][0], 0, -k, equality)
    if len(items) == 1 and items[0][1] == -1:
        return DiffAtom(0, items[0][0], -k, equality)
    if len(items) == 2 and items[0][1] == 1 and items[1][1] == -1:
        return DiffAtom(items[0][0], items[1][0], -k, equality)
    return Unsupported(c)


def normalize_condition(c: Cond, integer: bool = True):
    """Negation normal form whose leaves are guard atoms.

    Comparisons of the shape ``x <op> c``, ``x - y <op> c`` (after moving
    everything to one side) become :class:`DiffAtom`; over integers strict
    comparisons shift by one.  ``!=`` and anything else become
    :class:`Unsupported`.
    """
    c = negation_normal_form(c)
    if isinstance(c, BoolConst):
        return c
    if isinstance(c, Compare):
        return _atom(c, integer)
    cls = And if isinstance(c, And) else Or
    return cls(normalize_condition(c.left, integer), normalize_condition(c.right, integer))


# -- control-flow graphs -----------------------------------------------------

@dataclass(frozen=True)
class Edge:
    src: object
    dst: object
    label: Label
    process: int = 0


@dataclass(frozen=True)
class AssertSite:
    node: Optional[object]  # None when the assertion is unreachable code
    cond: Cond
    line: int


@dataclass(frozen=True)
class Cfg:
    name: str
    nodes: tuple
    entry: int
    exit: Optional[int]
    edges: tuple
    asserts: tuple = ()
    diagnostics: tuple = ()


class _CfgBuilder:
    def __init__(self):
        self.count = 0
        self.edges: list[Edge] = []
        self.asserts: list[tuple] = []

    def node(self) -> int:
        self.count += 1
        return self.count - 1

    def edge(self, src, dst, label):
        if isinstance(label, Guard) and label.cond == FALSE:
            return  # can never be taken
        self.edges.append(Edge(src, dst, label))

    def block(self, stmts, src: int, dst: int):
        stmts = [s for s in stmts if not isinstance(s, SkipStmt)]
        if not stmts:
            if src != dst:
                self.edge(src, dst, Skip())
            return
        cur = src
        for s in stmts[:-1]:
            nxt = self.node()
            self.stmt(s, cur, nxt)
            cur = nxt
        self.stmt(stmts[-1], cur, dst)

    def guarded(self, cond: Cond, body, src: int, dst: int):
        cond = negation_normal_form(cond)
        body = [s for s in body if not isinstance(s, SkipStmt)]
        if not body:
            self.edge(src, dst, Guard(cond))
        elif cond == TRUE:
            self.block(body, src, dst)
        else:
            mid = self.node()
            self.edge(src, mid, Guard(cond))
            self.block(body, mid, dst)

    def stmt(self, s: Stmt, src: int, dst: int):
        if isinstance(s, AssignStmt):
            self.edge(src, dst, Assign(s.target, s.expr))
        elif isinstance(s, Assert):
            self.asserts.append((src, s.cond, s.line))
            self.edge(src, dst, Guard(negation_normal_form(s.cond)))
        elif isinstance(s, If):
            self.guarded(s.cond, s.then, src, dst)
            self.guarded(Not(s.cond), s.orelse, src, dst)
        elif isinstance(s, While):
            self.guarded(s.cond, s.body, src, src)
            self.edge(src, dst, Guard(negation_normal_form(Not(s.cond))))
        else:
            raise TypeError(f"unknown statement {s!r}")


def build_cfg(body: Sequence[Stmt], name: str = "main") -> Cfg:
    """Control-flow graph of one statement list.

    Nodes are numbered in creation order.  Edges guarded by ``false`` are
    dropped and nodes left unreachable from the entry are removed (and
    reported in ``diagnostics``).
    """
    if all(isinstance(s, SkipStmt) for s in body):
        return Cfg(name, (0,), 0, 0, ())
    b = _CfgBuilder()
    entry, exit_ = b.node(), b.node()
    b.block(body, entry, exit_)

    succ: dict[int, list[int]] = {}
    for e in b.edges:
        succ.setdefault(e.src, []).append(e.dst)
    seen, stack = {entry}, [entry]
    while stack:
        for nxt in succ.get(stack.pop(), ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    kept = [n for n in range(b.count) if n in seen]
    renum = {old: new for new, old in enumerate(kept)}
    diagnostics = []
    dropped = b.count - len(kept)
    if dropped and (dropped > 1 or exit_ in seen):
        diagnostics.append(f"{name}: removed {dropped} unreachable control point(s)")
    elif dropped:
        diagnostics.append(f"{name}: the end of the process is unreachable")
    edges = tuple(Edge(renum[e.src], renum[e.dst], e.label) for e in b.edges if e.src in seen)
    asserts = tuple(AssertSite(renum.get(n), c, line) for n, c, line in b.asserts)
    return Cfg(name, tuple(range(len(kept))), renum[entry], renum.get(exit_), edges,
               asserts, tuple(diagnostics))


@dataclass(frozen=True)
class ProductCfg:
    """Nondeterministic interleaving: each edge moves exactly one process."""

    processes: tuple
    nodes: tuple
    entry: tuple
    edges: tuple

    @property
    def asserts(self) -> tuple:
        sites = []
        for p, cfg in enumerate(self.processes):
            for site in cfg.asserts:
                where = tuple(n for n in self.nodes if n[p] == site.node) if site.node is not None else ()
                sites.append(AssertSite(where, site.cond, site.line))
        return tuple(sites)

    @property
    def diagnostics(self) -> tuple:
        return tuple(d for cfg in self.processes for d in cfg.diagnostics)


def interleave(cfgs: Sequence[Cfg]) -> ProductCfg:
    if not cfgs:
        raise ValueError("need at least one process")
    nodes = tuple(itertools.product(*(cfg.nodes for cfg in cfgs)))
    edges = []
    for src in nodes:
        for p, cfg in enumerate(cfgs):
            for e in cfg.edges:
                if e.src == src[p]:
                    dst = src[:p] + (e.dst,) + src[p + 1:]
                    edges.append(Edge(src, dst, e.label, p))
    return ProductCfg(tuple(cfgs), nodes, tuple(cfg.entry for cfg in cfgs), tuple(edges))


def _letters(n: int) -> str:
    s = ""
    n += 1
    while n:
        n, r = divmod(n - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def format_point(node) -> str:
    """``(i,j,...)`` with every second process numbered by letters, as in ``(2,c)``."""
    if not isinstance(node, tuple):
        return str(node)
    parts = [str(n) if p % 2 == 0 else _letters(n) for p, n in enumerate(node)]
    return "(" + ",".join(parts) + ")"
