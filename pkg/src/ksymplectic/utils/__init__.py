"""
Utilities Module

Provides utility functions including:
- Input validation and error checking
- Graded check results with witnesses
- Exact elimination over the expression field
"""

from .checks import CheckResult, Witness, all_hold, check_zero
from .linear_system import LinearSolution, nonzero_factors, solve_linear_system
from .validation import (
    validate_dimension,
    validate_direction,
    validate_grid_counts,
    validate_index,
    validate_same_chart,
)

__all__ = [
    # checks exports
    "CheckResult",
    "Witness",
    "check_zero",
    "all_hold",
    # linear_system exports
    "LinearSolution",
    "nonzero_factors",
    "solve_linear_system",
    # validation exports
    "validate_dimension",
    "validate_direction",
    "validate_index",
    "validate_same_chart",
    "validate_grid_counts",
]
