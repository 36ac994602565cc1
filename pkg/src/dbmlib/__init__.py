"""Difference-bound matrix abstract domain and a small forward analyzer."""
from .bound import BOTTOM, INF, CoefficientOverflow, Interval
from .dbm import (ClosedDbm, Dbm, close, from_constraints, includes, is_empty, leq,
                  new_top, project, sem_equal)
from .domain import (alpha_points, apply_condition, assign, forget, guard, join,
                     meet, narrow, normalize, to_constraints, widen)
from .engine import (AnalysisOptions, AnalysisResult, analyze, analyze_program,
                     compare_domains, select_widening_points)
from .frontend import (ParseError, build_cfg, interleave, normalize_condition,
                       parse_program)
from .programs import load_program, program_path

__all__ = [
    "BOTTOM", "INF", "CoefficientOverflow", "Interval",
    "ClosedDbm", "Dbm", "close", "from_constraints", "includes", "is_empty", "leq",
    "new_top", "project", "sem_equal",
    "alpha_points", "apply_condition", "assign", "forget", "guard", "join", "meet",
    "narrow", "normalize", "to_constraints", "widen",
    "AnalysisOptions", "AnalysisResult", "analyze", "analyze_program",
    "compare_domains", "select_widening_points",
    "ParseError", "build_cfg", "interleave", "normalize_condition", "parse_program",
    "load_program", "program_path",
]
