"""
Command-Line Module

The ``ksym`` front end including:
- Problem files validated into pydantic models
- The built-in catalog of example problems
- Subcommands producing text or JSON reports with graded verdicts
"""

from .catalog import catalog, catalog_names, catalog_text
from .main import COMMANDS, build_parser, main, run, run_expectation
from .problem_file import (
    EXPECTATIONS,
    ProblemFile,
    load_problem,
    parse_assignments,
    parse_grid,
    parse_problem_text,
)
from .report import Report, VerdictEntry

__all__ = [
    # entry points
    "main",
    "run",
    "build_parser",
    "COMMANDS",
    "run_expectation",
    # problem files
    "EXPECTATIONS",
    "ProblemFile",
    "parse_problem_text",
    "parse_grid",
    "parse_assignments",
    "load_problem",
    # catalog
    "catalog",
    "catalog_names",
    "catalog_text",
    # reports
    "Report",
    "VerdictEntry",
]
