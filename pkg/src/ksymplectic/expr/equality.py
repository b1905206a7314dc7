"""
Symbolic Equality

Decides equality of expressions from the canonical rational form, falling
back to evaluation at seeded sample points when canonicalization leaves a
non-constant residue. The verdict grade is always reported.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from ..config.constants import Equality, Grade
from ..config.settings import Config, get_global_config
from ..exceptions import DomainError
from .calculus import free_symbols
from .evaluate import evaluate
from .nodes import Const, Expr, Func, VarId, as_expr
from .simplify import from_rational, canonical_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EqualityResult:
    """
    Outcome of :func:`symbolic_equal`.

    Truthy when the expressions are symbolic-equal or numeric-equal.
    """

    verdict: Equality
    residual: Expr
    witness: Optional[Dict[str, float]] = None

    @property
    def grade(self) -> Grade:
        if self.verdict is Equality.NUMERIC_EQUAL:
            return Grade.NUMERIC
        if self.verdict is Equality.NOT_EQUAL and self.witness is not None:
            return Grade.NUMERIC
        return Grade.SYMBOLIC

    @property
    def symbolic(self) -> bool:
        return self.verdict is Equality.SYMBOLIC_EQUAL

    def __bool__(self) -> bool:
        return self.verdict is not Equality.NOT_EQUAL


def sample_points(
    symbols: List[VarId],
    count: int,
    seed: int,
    low: float,
    high: float,
) -> List[Dict[VarId, float]]:
    """Seeded uniform sample points in ``[low, high]^dims``."""
    rng = np.random.default_rng(seed)
    draws = rng.uniform(low, high, size=(count, len(symbols)))
    return [dict(zip(symbols, row.tolist())) for row in draws]


def symbolic_equal(a: Any, b: Any, config: Optional[Config] = None) -> EqualityResult:
    """
    Test two expressions for equality.

    Args:
        a: First expression (numbers are coerced)
        b: Second expression
        config: Configuration supplying seed, sample count and tolerance

    Returns:
        EqualityResult with verdict symbolic-equal, numeric-equal or not-equal
    """
    a, b = as_expr(a), as_expr(b)
    residue = canonical_rational(a - b)
    residual = from_rational(residue)

    if residue.is_zero():
        return EqualityResult(Equality.SYMBOLIC_EQUAL, residual)
    if isinstance(residual, Const):
        return EqualityResult(Equality.NOT_EQUAL, residual)
    # A nonzero polynomial numerator in independent symbols is never identically zero.
    if not any(isinstance(atom, Func) for atom in residue.num.atoms()):
        return EqualityResult(Equality.NOT_EQUAL, residual)

    config = config or get_global_config()
    seed, count, low, high, rtol = config.sampling()

    symbols = sort_symbols(free_symbols(a) | free_symbols(b))
    used = 0
    for point in sample_points(symbols, count, seed, low, high):
        # Parameters are sampled like coordinates.
        params = {var.label: value for var, value in point.items() if not var.is_coordinate}
        try:
            va = evaluate(a, point, params)
            vb = evaluate(b, point, params)
        except DomainError:
            continue
        used += 1
        scale = max(abs(va), abs(vb), 1.0)
        if abs(va - vb) > rtol * scale:
            witness = {var.name: value for var, value in point.items()}
            return EqualityResult(Equality.NOT_EQUAL, residual, witness)

    if used == 0:
        logger.warning("No sample point was in the domain of %s; treating as unequal", residual)
        return EqualityResult(Equality.NOT_EQUAL, residual, {})

    logger.debug("Numeric-equal verdict on %d points for residue %s", used, residual)
    return EqualityResult(Equality.NUMERIC_EQUAL, residual)


def is_zero(e: Any, config: Optional[Config] = None) -> EqualityResult:
    """Shorthand for ``symbolic_equal(e, 0)``."""
    return symbolic_equal(e, 0, config)


def sort_symbols(symbols: Any) -> List[VarId]:
    return sorted(symbols, key=lambda v: v.sort_key())


__all__ = ["EqualityResult", "symbolic_equal", "is_zero", "sample_points", "sort_symbols"]
