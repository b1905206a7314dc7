"""
Exact Linear Elimination

Gauss-Jordan elimination for linear systems whose coefficients are
expressions, i.e. over the field of rational functions in the chart symbols
and parameters. The factors of non-constant pivots are recorded as assumptions
instead of being silently treated as nonzero.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..config.constants import SolutionKind
from ..config.settings import Config
from ..expr.equality import is_zero
from ..expr.nodes import ONE, ZERO, Const, Div, Expr, Mul, Neg, Pow
from ..expr.simplify import simplify
from .checks import Witness

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearSolution:
    """
    Solution set of A x = b.

    Attributes:
        kind: Unique, Family or Inconsistent
        values: Particular solution with free unknowns set to zero
        kernel: Basis of the homogeneous solutions
        free: Indices of the free unknowns
        assumptions: Factors of the non-constant pivots, each assumed nonzero
        witness: First equation with zero coefficients and nonzero right side
    """

    kind: SolutionKind
    values: Tuple[Expr, ...] = ()
    kernel: Tuple[Tuple[Expr, ...], ...] = ()
    free: Tuple[int, ...] = ()
    assumptions: Tuple[Expr, ...] = ()
    witness: Optional[Witness] = None
    labels: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return self.kind is not SolutionKind.INCONSISTENT


def _nonzero(e: Expr, config: Optional[Config]) -> bool:
    return e != ZERO and not is_zero(e, config)


def nonzero_factors(pivot: Expr) -> List[Expr]:
    """Factors whose joint non-vanishing is ``pivot != 0``, signs and numbers dropped."""
    if isinstance(pivot, Const):
        return []
    if isinstance(pivot, Neg):
        return nonzero_factors(pivot.arg)
    if isinstance(pivot, Pow):
        return nonzero_factors(pivot.base)
    if isinstance(pivot, Div):
        return nonzero_factors(pivot.num) + nonzero_factors(pivot.den)
    if isinstance(pivot, Mul):
        return [f for factor in pivot.factors for f in nonzero_factors(factor)]
    return [pivot]


def solve_linear_system(
    rows: Sequence[Sequence[Expr]],
    rhs: Sequence[Expr],
    labels: Optional[Sequence[str]] = None,
    config: Optional[Config] = None,
) -> LinearSolution:
    """
    Solve a linear system over the expression field.

    Rows keep their original order; the witness of an inconsistent system is
    the first row (in that order) left with zero coefficients and a nonzero
    right-hand side.

    Args:
        rows: Coefficient rows, one expression per unknown
        rhs: Right-hand sides
        labels: Names of the equations used in witnesses
        config: Configuration for zero tests

    Returns:
        LinearSolution
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    if len(rhs) != m:
        raise ValueError(f"Expected {m} right-hand sides, got {len(rhs)}")
    labels = tuple(labels) if labels is not None else tuple(f"row {i + 1}" for i in range(m))

    A: List[List[Expr]] = [[simplify(c) for c in row] for row in rows]
    b: List[Expr] = [simplify(c) for c in rhs]
    pivot_rows: List[int] = []
    pivot_cols: List[int] = []
    assumptions: List[Expr] = []

    for col in range(ncols):
        candidates = [
            r for r in range(m) if r not in pivot_rows and _nonzero(A[r][col], config)
        ]
        if not candidates:
            continue
        constant = [r for r in candidates if isinstance(A[r][col], Const)]
        r = constant[0] if constant else candidates[0]
        pivot = A[r][col]
        if not isinstance(pivot, Const):
            logger.debug("Pivot %s on '%s' assumed nonzero", pivot, labels[r])
        for factor in nonzero_factors(pivot):
            if factor not in assumptions:
                assumptions.append(factor)

        A[r] = [c if c == ZERO else simplify(c / pivot) for c in A[r]]
        A[r][col] = ONE
        b[r] = simplify(b[r] / pivot)
        for other in range(m):
            if other == r:
                continue
            factor = A[other][col]
            if factor == ZERO:
                continue
            A[other] = [
                simplify(c - factor * p) if p != ZERO else c for c, p in zip(A[other], A[r])
            ]
            A[other][col] = ZERO
            b[other] = simplify(b[other] - factor * b[r])
        pivot_rows.append(r)
        pivot_cols.append(col)

    for r in range(m):
        if r in pivot_rows:
            continue
        if _nonzero(b[r], config):
            witness = Witness(labels[r], b[r])
            logger.debug("Inconsistent equation '%s': 0 = %s", labels[r], b[r])
            return LinearSolution(
                SolutionKind.INCONSISTENT,
                assumptions=tuple(assumptions),
                witness=witness,
                labels=labels,
            )

    free = tuple(c for c in range(ncols) if c not in pivot_cols)
    values = [ZERO] * ncols
    for r, col in zip(pivot_rows, pivot_cols):
        values[col] = b[r]
    kernel = []
    for f in free:
        vector = [ZERO] * ncols
        vector[f] = ONE
        for r, col in zip(pivot_rows, pivot_cols):
            vector[col] = simplify(-A[r][f])
        kernel.append(tuple(vector))

    kind = SolutionKind.FAMILY if free else SolutionKind.UNIQUE
    return LinearSolution(
        kind,
        tuple(values),
        tuple(kernel),
        free,
        tuple(assumptions),
        labels=labels,
    )


__all__ = ["LinearSolution", "nonzero_factors", "solve_linear_system"]
