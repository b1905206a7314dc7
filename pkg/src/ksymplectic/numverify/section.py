"""
Discrete Sections

Values of a map phi: U -> Q on a grid together with its first prolongation
phi^(1) = (phi^i, dphi^i/dt^a) and the second derivatives needed by the
Euler-Lagrange operator. Derivatives are either exact (differentiated
closed forms) or centered differences of order h^2.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..config.constants import VarKind
from ..exceptions import InvalidSection
from ..expr.calculus import differentiate, free_symbols
from ..expr.evaluate import evaluate_array
from ..expr.nodes import Expr, VarId, as_expr, base_var, jet_var, time_var, velocity_var
from ..expr.simplify import simplify
from ..geometry.chart import Chart
from .grid import GridSpec, centered_first, centered_second

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscreteSection:
    """
    A section sampled on a grid.

    Attributes:
        chart: Chart of T^1_kQ the section is prolonged into
        grid: Grid over U
        values: phi^i, shape (n, *grid.shape)
        first: dphi^i/dt^a, shape (n, k, *grid.shape), NaN where undefined
        second: d^2 phi^i/dt^a dt^b, shape (n, k, k, *grid.shape)
        exact: Derivatives come from exact differentiation
        params: Numeric parameter values
        metadata: Solver information (scheme, iterations, residuals)
    """

    chart: Chart
    grid: GridSpec
    values: np.ndarray
    first: np.ndarray
    second: np.ndarray
    exact: bool = False
    params: Dict[str, float] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        n, k = self.chart.n, self.chart.k
        if self.grid.k != k:
            raise InvalidSection(f"Grid has {self.grid.k} directions, chart needs {k}")
        shape = self.grid.shape
        for name, array, lead in (
            ("values", self.values, (n,)),
            ("first", self.first, (n, k)),
            ("second", self.second, (n, k, k)),
        ):
            if array.shape != lead + shape:
                raise InvalidSection(f"{name} must have shape {lead + shape}, got {array.shape}")

    def point_values(self, jets: bool = False) -> Dict[VarId, np.ndarray]:
        """Arrays of q^i and v^i_a (and w^i_ab with ``jets``) at every node."""
        n, k = self.chart.n, self.chart.k
        values: Dict[VarId, np.ndarray] = {}
        for i in range(1, n + 1):
            values[base_var(i)] = self.values[i - 1]
            for a in range(1, k + 1):
                values[velocity_var(i, a)] = self.first[i - 1, a - 1]
                if jets:
                    for b in range(a, k + 1):
                        values[jet_var(i, a, b)] = self.second[i - 1, a - 1, b - 1]
        return values

    def evaluate(self, e: Expr, jets: bool = False) -> np.ndarray:
        """
        A function on T^1_kQ (or with jet symbols) composed with the section.

        Finite-difference sections are evaluated on the interior only; the
        boundary layer is NaN.
        """
        if self.exact:
            return evaluate_array(e, self.point_values(jets), self.params, self.grid.shape)
        inner = self.grid.interior(1)
        values = {var: array[inner] for var, array in self.point_values(jets).items()}
        out = np.full(self.grid.shape, np.nan)
        out[inner] = evaluate_array(e, values, self.params, out[inner].shape)
        return out

    def with_fd_prolongation(self) -> "DiscreteSection":
        """The same values with centered-difference derivatives."""
        first, second = fd_prolongation(self.values, self.grid)
        return DiscreteSection(
            self.chart,
            self.grid,
            self.values,
            first,
            second,
            False,
            self.params,
            dict(self.metadata),
        )


def fd_prolongation(values: np.ndarray, grid: GridSpec):
    """Centered first and second differences of node values of shape (n, *grid.shape)."""
    n, k = values.shape[0], grid.k
    steps = grid.steps
    first = np.empty((n, k) + grid.shape)
    second = np.empty((n, k, k) + grid.shape)
    for i in range(n):
        for a in range(k):
            first[i, a] = centered_first(values[i], a, steps[a], k)
            for b in range(k):
                second[i, a, b] = centered_second(values[i], a, b, steps[a], steps[b], k)
    return first, second


def _time_only(chart: Chart, e: Expr, label: str) -> None:
    for var in free_symbols(e):
        if var.kind is VarKind.TIME and 1 <= var.direction <= chart.k:
            continue
        if var.kind is VarKind.PARAMETER and var.label in chart.params:
            continue
        raise InvalidSection(
            f"{label} may depend only on t1..t{chart.k} and parameters, found {var.name}"
        )


def sample_analytic(
    chart: Chart,
    phi: Sequence[Union[str, Expr]],
    grid: GridSpec,
    params: Optional[Mapping[str, float]] = None,
    exact: bool = True,
) -> DiscreteSection:
    """
    Sample a closed-form map t -> phi(t) on a grid.

    Args:
        chart: Chart whose n components phi^i are given
        phi: Expressions over the formal symbols t1..tk
        grid: Grid over U
        params: Numeric parameter values
        exact: Differentiate the expressions (True) or use centered differences

    Returns:
        DiscreteSection

    Raises:
        DomainError: If a component leaves its domain on the grid
        InvalidSection: If the component count is wrong or a component depends on
            anything but t1..tk and parameters
    """
    if len(phi) != chart.n:
        raise InvalidSection(f"Expected {chart.n} components, got {len(phi)}")
    params = dict(params or {})
    components = [
        chart.expr(p, allow_formal=True) if isinstance(p, str) else simplify(as_expr(p))
        for p in phi
    ]
    for i, c in enumerate(components, start=1):
        _time_only(chart, c, f"phi^{i}")

    mesh = {time_var(a): t for a, t in enumerate(grid.mesh(), start=1)}
    shape = grid.shape
    values = np.stack([evaluate_array(c, mesh, params, shape) for c in components])
    if not exact:
        first, second = fd_prolongation(values, grid)
        logger.debug("Sampled %d components on %s with centered differences", chart.n, grid)
        return DiscreteSection(chart, grid, values, first, second, False, params)

    n, k = chart.n, chart.k
    first = np.empty((n, k) + shape)
    second = np.empty((n, k, k) + shape)
    for i, c in enumerate(components):
        for a in range(k):
            derivative = differentiate(c, time_var(a + 1))
            first[i, a] = evaluate_array(derivative, mesh, params, shape)
            for b in range(k):
                second[i, a, b] = evaluate_array(
                    differentiate(derivative, time_var(b + 1)), mesh, params, shape
                )
    logger.debug("Sampled %d components on %s with exact derivatives", n, grid)
    return DiscreteSection(chart, grid, values, first, second, True, params)


def export_section(
    section: DiscreteSection, path: Optional[Union[str, Path]] = None, precision: int = 12
) -> pd.DataFrame:
    """
    Tabulate a section, one node per row in row-major order.

    Columns are the multi-index (i1..ik), the coordinates t1..tk, the values
    q1..qn and the prolonged values v{i}_{a}. With ``path`` the table is also
    written as tab-separated text with a header line, floats to ``precision``
    significant digits.
    """
    chart, grid = section.chart, section.grid
    columns: Dict[str, np.ndarray] = {}
    indices = np.indices(grid.shape)
    for a in range(grid.k):
        columns[f"i{a + 1}"] = indices[a].ravel()
    for a, t in enumerate(grid.mesh(), start=1):
        columns[f"t{a}"] = t.ravel()
    for i in range(chart.n):
        columns[f"q{i + 1}"] = section.values[i].ravel()
    for i in range(chart.n):
        for a in range(chart.k):
            columns[f"v{i + 1}_{a + 1}"] = section.first[i, a].ravel()
    frame = pd.DataFrame(columns)

    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, sep="\t", index=False, float_format=f"%.{precision}g")
        logger.info("Section exported to %s (%d nodes)", path, len(frame))
    return frame


__all__ = ["DiscreteSection", "fd_prolongation", "sample_analytic", "export_section"]
