"""
Residuals on Sections

Measures how well a discrete section satisfies the Euler-Lagrange
equations, the integral-section equations of a SOPDE, and the conservation
of a current. Norms are taken over the interior of the grid; boundary
layers where centered stencils are undefined are excluded.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from ..config.constants import CONVERGENCE_RATIO
from ..config.settings import Config, get_global_config
from ..expr.nodes import Add, Div, Expr, Neg
from ..lagrangian.hessian import hessian
from ..lagrangian.lagrangian import Lagrangian
from ..sopde.euler_lagrange import el_operator
from ..sopde.sopde import Sopde, formal_sopde
from ..symmetry.currents import CurrentTuple
from ..utils.validation import validate_same_chart
from .grid import GridSpec, centered_first
from .section import DiscreteSection

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidualReport:
    """
    Norms of a residual field over the interior of a grid.

    Attributes:
        max_abs: Maximum absolute residual
        l2_mean: Root mean square residual
        scale: Maximum of the summed magnitudes of the residual's terms,
            the size against which max_abs should be read
        values: Residual arrays, NaN outside their stencil support
        width: Depth of the excluded boundary layer
    """

    max_abs: float
    l2_mean: float
    scale: float
    values: np.ndarray
    width: int

    @property
    def relative(self) -> float:
        return self.max_abs / self.scale if self.scale > 0 else self.max_abs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_abs": float(self.max_abs),
            "l2_mean": float(self.l2_mean),
            "scale": float(self.scale),
            "boundary_width": self.width,
        }

    def __str__(self) -> str:
        return f"max_abs: {self.max_abs:.3e}, l2_mean: {self.l2_mean:.3e}, scale: {self.scale:.3e}"


def _report(
    residual: np.ndarray, magnitude: np.ndarray, grid: GridSpec, width: int
) -> ResidualReport:
    inner = (Ellipsis,) + grid.interior(width)
    core = residual[inner]
    return ResidualReport(
        max_abs=float(np.max(np.abs(core))),
        l2_mean=float(np.sqrt(np.mean(core**2))),
        scale=float(np.max(magnitude[inner])),
        values=residual,
        width=width,
    )


def _width(config: Optional[Config]) -> int:
    config = config or get_global_config()
    return int(config.get("numverify.interior_width"))


def _magnitude(section: DiscreteSection, e: Expr, jets: bool) -> np.ndarray:
    """
    Sum of the absolute values of the top-level terms of ``e`` on the section.

    A quotient contributes the magnitude of its numerator over the absolute
    value of its denominator.
    """
    if isinstance(e, Neg):
        return _magnitude(section, e.arg, jets)
    if isinstance(e, Div):
        return _magnitude(section, e.num, jets) / np.abs(section.evaluate(e.den, jets))
    terms = e.terms if isinstance(e, Add) else (e,)
    total = np.zeros(section.grid.shape)
    for term in terms:
        total = total + np.abs(section.evaluate(term, jets))
    return total


def el_residual(
    section: DiscreteSection, lagrangian: Lagrangian, config: Optional[Config] = None
) -> ResidualReport:
    """
    Euler-Lagrange residual of a section.

    The operator g^ab_ij w^j_ab + (first-order part) is evaluated with the
    section's second derivatives in place of w; one residual array per i.
    """
    validate_same_chart(section, lagrangian)
    operator = el_operator(lagrangian)
    residual = np.stack([section.evaluate(e, jets=True) for e in operator])
    magnitude = np.max(np.stack([_magnitude(section, e, True) for e in operator]), axis=0)
    report = _report(residual, magnitude, section.grid, _width(config))
    logger.debug("Euler-Lagrange residual: %s", report)
    return report


def divergence_residual(
    f: CurrentTuple, section: DiscreteSection, config: Optional[Config] = None
) -> ResidualReport:
    """
    Divergence sum_a d(f^a o phi^(1))/dt^a along a section.

    Exact sections use the chain rule on exact second derivatives; finite
    difference sections take centered t^a-differences of f^a evaluated on the
    prolonged section, so the norm excludes one more boundary layer.
    """
    validate_same_chart(f, section)
    width = _width(config)
    k = section.chart.k
    if section.exact:
        formal = formal_sopde(section.chart)
        totals = [formal.apply(a, f[a]) for a in range(1, k + 1)]
        terms = [section.evaluate(e, jets=True) for e in totals]
        magnitude = sum(_magnitude(section, e, True) for e in totals)
    else:
        steps = section.grid.steps
        terms = [
            centered_first(section.evaluate(f[a]), a - 1, steps[a - 1], k) for a in range(1, k + 1)
        ]
        magnitude = sum(np.abs(t) for t in terms)
        width += 1
    residual = sum(terms)
    report = _report(residual, magnitude, section.grid, width)
    logger.debug("Divergence residual of %s: %s", f, report)
    return report


def _coefficient_gaps(xi: Sopde, section: DiscreteSection) -> np.ndarray:
    """d^2 phi^i/dt^a dt^b - xi^i_ab o phi^(1), shape (n, k, k, *grid)."""
    n, k = section.chart.n, section.chart.k
    gaps = np.empty((n, k, k) + section.grid.shape)
    for i in range(1, n + 1):
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                coefficient = section.evaluate(xi.coefficient(i, a, b))
                gaps[i - 1, a - 1, b - 1] = section.second[i - 1, a - 1, b - 1] - coefficient
    return gaps


def integral_section_residual(
    xi: Sopde, section: DiscreteSection, config: Optional[Config] = None
) -> ResidualReport:
    """Residual of d^2 phi^i/dt^a dt^b = xi^i_ab(phi^(1)) over all i, a, b."""
    validate_same_chart(xi, section)
    gaps = _coefficient_gaps(xi, section)
    magnitude = np.max(np.abs(section.second).reshape((-1,) + section.grid.shape), axis=0)
    report = _report(gaps, magnitude, section.grid, _width(config))
    logger.debug("Integral-section residual: %s", report)
    return report


def contracted_sopde_residual(
    section: DiscreteSection,
    xi: Sopde,
    lagrangian: Lagrangian,
    config: Optional[Config] = None,
) -> ResidualReport:
    """
    Residuals g^ab_ij (d^2 phi^j/dt^a dt^b - xi^j_ab) on the prolonged section.

    For xi in X^k_L this vanishes, to discretization order, along every
    solution of the Euler-Lagrange equations.
    """
    validate_same_chart(section, xi, lagrangian)
    n, k = section.chart.n, section.chart.k
    blocks = hessian(lagrangian)
    gaps = _coefficient_gaps(xi, section)
    residual = np.zeros((n,) + section.grid.shape)
    magnitude = np.zeros(section.grid.shape)
    for i in range(1, n + 1):
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                for j in range(1, n + 1):
                    weight = section.evaluate(blocks.entry(a, b, i, j))
                    residual[i - 1] += weight * gaps[j - 1, a - 1, b - 1]
                    magnitude = magnitude + np.abs(weight * section.second[j - 1, a - 1, b - 1])
    report = _report(residual, magnitude, section.grid, _width(config))
    logger.debug("Contracted SOPDE residual: %s", report)
    return report


@dataclass(frozen=True)
class ConvergenceStudy:
    """
    Residuals on successively halved grids.

    Attributes:
        steps: Largest step of each grid
        residuals: Measured residual per grid
    """

    steps: Sequence[float]
    residuals: Sequence[float]

    @property
    def ratios(self) -> List[float]:
        """residual(h) / residual(h/2) for consecutive grids."""
        return [
            coarse / fine if fine > 0 else float("inf")
            for coarse, fine in zip(self.residuals, self.residuals[1:])
        ]

    @property
    def min_ratio(self) -> float:
        return min(self.ratios) if self.ratios else float("nan")

    def converges(self, threshold: float = CONVERGENCE_RATIO) -> bool:
        """Whether every halving reduced the residual by at least ``threshold``."""
        return bool(self.ratios) and self.min_ratio >= threshold

    def to_frame(self) -> pd.DataFrame:
        ratios = [float("nan")] + self.ratios
        return pd.DataFrame(
            {"step": list(self.steps), "residual": list(self.residuals), "ratio": ratios}
        )


def convergence_study(
    measure: Callable[[GridSpec], float], grid: GridSpec, levels: int = 2
) -> ConvergenceStudy:
    """
    Evaluate ``measure`` on ``grid`` and on ``levels - 1`` successive halvings.

    Args:
        measure: Residual of the discretization on a grid
        grid: Coarsest grid
        levels: Number of grids

    Returns:
        ConvergenceStudy
    """
    if levels < 2:
        raise ValueError(f"A convergence study needs at least 2 levels, got {levels}")
    steps, residuals = [], []
    for level in range(levels):
        steps.append(max(grid.steps))
        residuals.append(float(measure(grid)))
        logger.info("Level %d: h = %.3e, residual = %.3e", level, steps[-1], residuals[-1])
        if level < levels - 1:
            grid = grid.refined()
    study = ConvergenceStudy(tuple(steps), tuple(residuals))
    if not study.converges():
        logger.warning(
            "Residual ratios %s fall below the expected %.1f", study.ratios, CONVERGENCE_RATIO
        )
    return study


__all__ = [
    "ResidualReport",
    "el_residual",
    "divergence_residual",
    "integral_section_residual",
    "contracted_sopde_residual",
    "ConvergenceStudy",
    "convergence_study",
]
