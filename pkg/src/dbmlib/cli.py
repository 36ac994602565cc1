"""Command-line driver.

    dbmlib analyze FILE [--domain dbm|interval] [--widening-delay K]
                        [--descending-steps K] [--coefficients integer|rational]
                        [--format text|json] [--compare] [--dump-cfg]
    dbmlib examples

Exit status: 0 when every assertion is proved, 1 when some assertion stays
unknown, 2 on unreadable input, parse errors, bad options or coefficient
overflow.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .bound import CoefficientOverflow
from .engine import (AnalysisOptions, AnalysisResult, analyze_program, compare_domains,
                     select_widening_points)
from .frontend import ParseError, format_label, format_point, parse_program
from .programs import CORPUS, program_path

EXIT_OK, EXIT_UNPROVED, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    path: str
    options: AnalysisOptions
    format: str = "text"
    compare: bool = False
    dump_cfg: bool = False


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on its own; route the message through us instead
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dbmlib", description="Invariant inference with difference-bound matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    a = sub.add_parser("analyze", help="analyze a program and print its invariants")
    a.add_argument("path", metavar="FILE")
    a.add_argument("--domain", choices=("dbm", "interval"), default="dbm")
    a.add_argument("--widening-delay", type=_non_negative, default=1, metavar="K")
    a.add_argument("--descending-steps", type=_non_negative, default=2, metavar="K")
    a.add_argument("--coefficients", choices=("integer", "rational"), default="integer")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--compare", action="store_true", help="run both domains and check containment")
    a.add_argument("--dump-cfg", action="store_true", help="also print the product control-flow graph")
    sub.add_parser("examples", help="list the bundled example programs")
    return parser


def parse_config(argv: Sequence[str]) -> Optional[CliConfig]:
    ns = build_parser().parse_args(argv)
    if ns.command == "examples":
        return None
    opts = AnalysisOptions(ns.domain, ns.widening_delay, ns.descending_steps, ns.coefficients)
    return CliConfig(ns.path, opts, ns.format, ns.compare, ns.dump_cfg)


# -- rendering ---------------------------------------------------------------

def _verdicts(result: AnalysisResult) -> list[dict]:
    return [{"line": a.line, "verdict": a.verdict} for a in result.asserts]


def _graph_data(result: AnalysisResult) -> dict:
    g = result.graph
    heads = select_widening_points(g)
    names = [cfg.name for cfg in g.processes]
    return {
        "entry": format_point(g.entry),
        "nodes": [format_point(n) for n in g.nodes],
        "widening_points": [format_point(n) for n in g.nodes if n in heads],
        "edges": [{"src": format_point(e.src), "dst": format_point(e.dst),
                   "process": names[e.process], "label": format_label(e.label)}
                  for e in g.edges],
    }


def render_json(cfg: CliConfig, result: AnalysisResult, comparison=None) -> str:
    doc = {
        "domain": result.domain,
        "options": asdict(cfg.options),
        "points": result.table(),
        "asserts": _verdicts(result),
    }
    if comparison is not None:
        doc["comparison"] = {
            "interval": comparison.interval.table(),
            "strict_points": comparison.strict_points,
            "violations": [{"point": r.point, "variable": r.variable,
                            "dbm": str(r.dbm), "interval": str(r.interval)}
                           for r in comparison.violations],
        }
    if cfg.dump_cfg:
        doc["cfg"] = _graph_data(result)
    return json.dumps(doc, indent=2) + "\n"


def _table_lines(table: dict) -> list[str]:
    lines = []
    for point, constraints in table.items():
        lines.append(point)
        lines += [f"  {c}" for c in constraints] or ["  true"]
    return lines


def render_text(cfg: CliConfig, result: AnalysisResult, comparison=None) -> str:
    o = cfg.options
    lines = [f"domain: {result.domain}  widening delay: {o.widening_delay}  "
             f"descending steps: {o.descending_steps}  coefficients: {o.coefficients}", ""]
    lines += _table_lines(result.table())
    if result.asserts:
        lines += ["", "asserts"]
        lines += [f"  line {a.line}: {a.verdict}" for a in result.asserts]
    if comparison is not None:
        lines += ["", "interval domain"]
        lines += _table_lines(comparison.interval.table())
        lines += ["", f"containment violations: {len(comparison.violations)}"]
        for r in comparison.violations:
            lines.append(f"  {r.point} {r.variable}: dbm {r.dbm} not within {r.interval}")
        strict = ", ".join(comparison.strict_points) or "none"
        lines.append(f"dbm strictly more precise at: {strict}")
    if cfg.dump_cfg:
        data = _graph_data(result)
        lines += ["", f"control-flow graph (entry {data['entry']}, "
                      f"widening points {' '.join(data['widening_points']) or 'none'})"]
        lines += [f"  {e['src']} -> {e['dst']} [{e['process']}] {e['label']}" for e in data["edges"]]
    return "\n".join(lines) + "\n"


# -- entry points ------------------------------------------------------------

def run_cli(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except _UsageError as exc:
        err.write(f"dbmlib: error: {exc}\n")
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if cfg is None:
        for name in CORPUS:
            out.write(f"{name}\t{program_path(name)}\n")
        return EXIT_OK

    try:
        with open(cfg.path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        err.write(f"dbmlib: cannot read {cfg.path}: {exc}\n")
        return EXIT_ERROR
    try:
        program = parse_program(text)
    except ParseError as exc:
        err.write(f"{cfg.path}:{exc}\n")
        return EXIT_ERROR

    try:
        if cfg.compare:
            comparison = compare_domains(program, cfg.options)
            result = comparison.dbm if cfg.options.domain == "dbm" else comparison.interval
        else:
            comparison = None
            result = analyze_program(program, cfg.options)
    except CoefficientOverflow as exc:
        err.write(f"dbmlib: analysis aborted: {exc}\n")
        return EXIT_ERROR

    for note in result.graph.diagnostics:
        err.write(f"dbmlib: note: {note}\n")
    render = render_json if cfg.format == "json" else render_text
    out.write(render(cfg, result, comparison))
    if comparison is not None and comparison.violations:
        return EXIT_UNPROVED
    return EXIT_OK if result.all_proved else EXIT_UNPROVED


def main() -> None:
    sys.exit(run_cli())

