"""
Velocity Hessian and Regularity

The blocks g^ab_ij = d^2L/dv^i_a dv^j_b and the regularity verdict of a
Lagrangian (maximal rank kn of the block matrix).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config.constants import Grade, Regularity, VarKind
from ..config.settings import Config, get_global_config
from ..exceptions import DomainError
from ..expr.calculus import differentiate, free_symbols
from ..expr.equality import sample_points, sort_symbols
from ..expr.evaluate import evaluate
from ..expr.nodes import ZERO, Add, Const, Expr, Mul, Neg, children
from ..expr.simplify import simplify
from ..geometry.chart import Chart
from ..utils.checks import CheckResult, check_zero
from .lagrangian import Lagrangian

logger = logging.getLogger(__name__)

# Largest block matrix whose determinant is expanded symbolically
SYMBOLIC_DETERMINANT_LIMIT = 6


@dataclass(frozen=True)
class HessianBlocks:
    """
    Velocity Hessian of a Lagrangian.

    ``blocks[a-1][b-1][i-1][j-1]`` holds g^ab_ij.
    """

    chart: Chart
    blocks: Tuple[Tuple[Tuple[Tuple[Expr, ...], ...], ...], ...]

    def entry(self, alpha: int, beta: int, i: int, j: int) -> Expr:
        return self.blocks[alpha - 1][beta - 1][i - 1][j - 1]

    def matrix(self) -> List[List[Expr]]:
        """The kn x kn matrix with rows (a, i) and columns (b, j), a and b outermost."""
        k, n = self.chart.k, self.chart.n
        return [
            [self.blocks[a][b][i][j] for b in range(k) for j in range(n)]
            for a in range(k)
            for i in range(n)
        ]

    def is_symmetric(self, config: Optional[Config] = None) -> CheckResult:
        """g^ab_ij = g^ba_ji."""
        k, n = self.chart.k, self.chart.n
        return check_zero(
            (
                (
                    f"g^{a + 1}{b + 1}_{i + 1}{j + 1} - g^{b + 1}{a + 1}_{j + 1}{i + 1}",
                    simplify(self.blocks[a][b][i][j] - self.blocks[b][a][j][i]),
                )
                for a in range(k)
                for b in range(k)
                for i in range(n)
                for j in range(n)
            ),
            config,
        )

    def evaluate(
        self, values: Dict[Any, float], params: Optional[Dict[str, float]] = None
    ) -> np.ndarray:
        """The block matrix at a point."""
        return np.array(
            [[evaluate(entry, values, params) for entry in row] for row in self.matrix()],
            dtype=float,
        )

    def is_constant(self) -> bool:
        return all(isinstance(entry, Const) for row in self.matrix() for entry in row)


@dataclass(frozen=True)
class RegularityReport:
    """
    Regularity verdict of a Lagrangian.

    Truthy exactly when the verdict is regular.
    """

    verdict: Regularity
    grade: Grade
    determinant: Optional[Expr] = None
    witness: Optional[Dict[str, float]] = None
    assumptions: Tuple[Expr, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.verdict is Regularity.REGULAR


def hessian(lagrangian: Lagrangian) -> HessianBlocks:
    """All second velocity derivatives of L, canonicalized."""
    chart = lagrangian.chart
    first = {
        (a, i): lagrangian.dv(i, a)
        for a in range(1, chart.k + 1)
        for i in range(1, chart.n + 1)
    }
    blocks = tuple(
        tuple(
            tuple(
                tuple(
                    differentiate(first[(a, i)], chart.v(j, b).var)
                    for j in range(1, chart.n + 1)
                )
                for i in range(1, chart.n + 1)
            )
            for b in range(1, chart.k + 1)
        )
        for a in range(1, chart.k + 1)
    )
    return HessianBlocks(chart, blocks)


def exact_rank(matrix: List[List[Fraction]]) -> int:
    """Rank of a rational matrix by exact elimination."""
    rows = [list(row) for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def determinant(matrix: List[List[Expr]]) -> Expr:
    """Symbolic determinant by cofactor expansion along the sparsest row."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    row = min(range(size), key=lambda r: sum(entry != ZERO for entry in matrix[r]))
    terms = []
    for col, entry in enumerate(matrix[row]):
        if entry == ZERO:
            continue
        minor = [
            [matrix[r][c] for c in range(size) if c != col] for r in range(size) if r != row
        ]
        term = Mul((entry, determinant(minor)))
        terms.append(term if (row + col) % 2 == 0 else Neg(term))
    return simplify(Add(tuple(terms))) if terms else ZERO


def _parameter_monomial(e: Expr) -> bool:
    """A product of parameters with a constant factor."""
    if isinstance(e, Neg):
        e = e.arg
    return all(var.kind is VarKind.PARAMETER for var in free_symbols(e)) and not any(
        isinstance(node, Add) for node in _walk(e)
    )


def _walk(e: Expr):
    yield e
    for child in children(e):
        yield from _walk(child)


def is_regular(lagrangian: Lagrangian, config: Optional[Config] = None) -> RegularityReport:
    """
    Decide whether the velocity Hessian has maximal rank kn.

    Constant matrices are decided by exact rank. Otherwise the determinant is
    expanded symbolically (up to a fixed size); a zero determinant is
    singular and a nonzero parameter monomial is regular under the assumption
    that the parameters are nonzero. Remaining cases are graded numerically
    from the seeded sample points.

    Args:
        lagrangian: Lagrangian
        config: Configuration for sampling and determinant tolerance

    Returns:
        RegularityReport
    """
    config = config or get_global_config()
    blocks = hessian(lagrangian)
    size = lagrangian.chart.k * lagrangian.chart.n

    if blocks.is_constant():
        matrix = [[entry.value for entry in row] for row in blocks.matrix()]
        rank = exact_rank(matrix)
        verdict = Regularity.REGULAR if rank == size else Regularity.SINGULAR
        logger.debug("Constant Hessian of rank %d/%d", rank, size)
        return RegularityReport(verdict, Grade.SYMBOLIC)

    det: Optional[Expr] = None
    if size <= SYMBOLIC_DETERMINANT_LIMIT:
        det = determinant(blocks.matrix())
        if det == ZERO:
            return RegularityReport(Regularity.SINGULAR, Grade.SYMBOLIC, det)
        if _parameter_monomial(det):
            return RegularityReport(Regularity.REGULAR, Grade.SYMBOLIC, det, assumptions=(det,))

    tolerance = config.get("regularity.determinant_tolerance")
    symbols = sort_symbols(free_symbols(lagrangian.L))
    plan = config.sampling()
    points = sample_points(symbols, plan.count, plan.seed, plan.low, plan.high)
    used = 0
    for point in points:
        params = {var.label: value for var, value in point.items() if var.kind is VarKind.PARAMETER}
        try:
            value = float(np.linalg.det(blocks.evaluate(point, params)))
        except DomainError:
            continue
        used += 1
        if abs(value) <= tolerance:
            witness = {var.name: x for var, x in point.items()}
            logger.warning("Hessian determinant %.3e at sample point; regularity undecided", value)
            return RegularityReport(Regularity.UNDECIDED, Grade.NUMERIC, det, witness)

    if used == 0:
        return RegularityReport(Regularity.UNDECIDED, Grade.NUMERIC, det, {})
    logger.info("Hessian determinant nonzero at %d sample points", used)
    return RegularityReport(Regularity.REGULAR, Grade.NUMERIC, det)


__all__ = [
    "HessianBlocks",
    "RegularityReport",
    "hessian",
    "is_regular",
    "determinant",
    "exact_rank",
]
