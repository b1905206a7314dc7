"""
Expression Module

Self-contained symbolic expression engine including:
- Immutable expression trees over chart symbols and named parameters
- Recursive-descent parsing and grammar-faithful printing
- Exact differentiation and canonical simplification over rationals
- Numeric evaluation (scalar and numpy-vectorised)
- Symbolic equality with a graded numeric fallback
"""

from .calculus import differentiate, free_symbols, substitute
from .equality import EqualityResult, is_zero, symbolic_equal
from .evaluate import evaluate, evaluate_array
from .nodes import (
    ONE,
    ZERO,
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Sym,
    VarId,
    as_expr,
    base_var,
    const,
    func,
    jet_var,
    node_key,
    parameter_var,
    time_var,
    velocity_var,
)
from .parser import parse
from .printer import to_string
from .simplify import simplify

__all__ = [
    # nodes
    "Expr",
    "Const",
    "Sym",
    "Add",
    "Mul",
    "Pow",
    "Neg",
    "Div",
    "Func",
    "VarId",
    "ZERO",
    "ONE",
    "as_expr",
    "const",
    "func",
    "node_key",
    "base_var",
    "velocity_var",
    "parameter_var",
    "time_var",
    "jet_var",
    # operations
    "parse",
    "to_string",
    "simplify",
    "differentiate",
    "substitute",
    "free_symbols",
    "evaluate",
    "evaluate_array",
    "symbolic_equal",
    "is_zero",
    "EqualityResult",
]
