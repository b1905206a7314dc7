"""
Finite-Difference Solvers

Solves the Euler-Lagrange equations of constant-coefficient quadratic
Lagrangians whose operator is diagonal, sum_a c^i_a d^2 phi^i/(dt^a)^2 = 0:

- hyperbolic (one coefficient sign differs): explicit leapfrog along the
  odd direction, with a checked CFL bound
- elliptic (all signs agree): red-black successive over-relaxation

Initial and boundary values are taken from a closed-form map over t.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config.constants import Scheme, VarKind
from ..config.settings import Config, get_global_config
from ..exceptions import CFLViolation, NonConvergence, UnsupportedOperator
from ..expr.calculus import differentiate, free_symbols, substitute
from ..expr.evaluate import evaluate
from ..expr.nodes import ZERO, Expr
from ..lagrangian.lagrangian import Lagrangian
from ..sopde.euler_lagrange import el_operator
from .grid import GridSpec, centered_second, shifted
from .residuals import el_residual
from .section import DiscreteSection, fd_prolongation, sample_analytic

logger = logging.getLogger(__name__)


def diagonal_coefficients(lagrangian: Lagrangian) -> List[List[float]]:
    """
    Coefficients c^i_a of a diagonal constant-coefficient operator.

    Raises:
        UnsupportedOperator: If the Euler-Lagrange operator has first-order terms,
            mixed or coupled second derivatives, non-constant or zero
            coefficients
    """
    chart = lagrangian.chart
    params = lagrangian.parameter_values
    jets = chart.jet_vars()
    coefficients = []
    for i, e in enumerate(el_operator(lagrangian), start=1):
        if substitute(e, {w: ZERO for w in jets}) != ZERO:
            raise UnsupportedOperator(f"Euler-Lagrange equation {i} has first-order terms")
        row = []
        for w in jets:
            c = differentiate(e, w)
            diagonal = w.index == i and w.direction == w.direction2
            if not diagonal:
                if c != ZERO:
                    raise UnsupportedOperator(f"Euler-Lagrange equation {i} involves {w.name}")
                continue
            if any(var.kind is not VarKind.PARAMETER for var in free_symbols(c)):
                raise UnsupportedOperator(f"Coefficient of {w.name} is not constant: {c}")
            value = evaluate(c, {}, params)
            if value == 0.0:
                raise UnsupportedOperator(f"Euler-Lagrange equation {i} does not involve {w.name}")
            row.append(value)
        coefficients.append(row)
    return coefficients


def classify(coefficients: Sequence[float]) -> Tuple[Scheme, Optional[int]]:
    """Scheme for one equation and, for leapfrog, its 0-based time axis."""
    signs = [c > 0 for c in coefficients]
    if all(signs) or not any(signs):
        return Scheme.RELAXATION, None
    positives = [a for a, s in enumerate(signs) if s]
    negatives = [a for a, s in enumerate(signs) if not s]
    for odd in (positives, negatives):
        if len(odd) == 1:
            return Scheme.LEAPFROG, odd[0]
    raise UnsupportedOperator(
        f"Operator with coefficients {list(coefficients)} is neither hyperbolic nor elliptic"
    )


def _leapfrog(
    u: np.ndarray, coefficients: Sequence[float], time_axis: int, steps: Sequence[float]
) -> int:
    """Advance ``u`` in place from its first two time layers; returns the layer count."""
    k = u.ndim
    ht = steps[time_axis]
    spatial = [a for a in range(k) if a != time_axis]
    speeds = {a: -coefficients[a] / coefficients[time_axis] for a in spatial}
    courant = sum(speeds[a] * ht * ht / (steps[a] * steps[a]) for a in spatial)
    if courant > 1.0 + 1e-12:
        raise CFLViolation(
            f"Leapfrog needs sum c_a h_t^2/h_a^2 <= 1, got {courant:.4f}; "
            f"reduce the step along t{time_axis + 1}"
        )
    layers = np.moveaxis(u, time_axis, 0)
    inner = tuple(slice(1, n - 1) for n in layers.shape[1:])
    for m in range(1, layers.shape[0] - 1):
        current = layers[m]
        acceleration = 0.0
        for position, a in enumerate(spatial):
            acceleration = acceleration + speeds[a] * centered_second(
                current, position, position, steps[a], steps[a], k - 1
            )
        update = 2.0 * current - layers[m - 1] + ht * ht * acceleration
        layers[m + 1][inner] = update[inner]
    return layers.shape[0]


def _relax(
    u: np.ndarray,
    coefficients: Sequence[float],
    steps: Sequence[float],
    tolerance: float,
    max_iterations: int,
) -> Tuple[int, float]:
    """Red-black SOR in place on the interior of ``u``; returns (iterations, residual)."""
    k = u.ndim
    inner = tuple(slice(1, n - 1) for n in u.shape)
    weights = [c / (h * h) for c, h in zip(coefficients, steps)]
    diagonal = 2.0 * sum(weights)
    omega = 2.0 / (1.0 + math.sin(math.pi / (max(u.shape) - 1)))
    parity = np.indices(u.shape).sum(axis=0) % 2
    colours = [(parity == colour)[inner] for colour in (0, 1)]

    def neighbours() -> np.ndarray:
        total = 0.0
        for a in range(k):
            plus = [0] * k
            minus = [0] * k
            plus[a], minus[a] = 1, -1
            total = total + weights[a] * (shifted(u, plus) + shifted(u, minus))
        return total[inner]

    residual = float("inf")
    for iteration in range(1, max_iterations + 1):
        for mask in colours:
            core = u[inner]
            target = neighbours() / diagonal
            core[mask] = (1.0 - omega) * core[mask] + omega * target[mask]
        residual = float(np.max(np.abs(neighbours() / diagonal - u[inner])))
        if residual < tolerance:
            return iteration, residual
        if iteration % 1000 == 0:
            logger.debug("Relaxation iteration %d: residual %.3e", iteration, residual)
    raise NonConvergence(
        f"Relaxation residual {residual:.3e} above {tolerance:.1e} "
        f"after {max_iterations} iterations",
        residual,
        max_iterations,
    )


def solve_fd(
    lagrangian: Lagrangian,
    grid: GridSpec,
    data: Sequence[Union[str, Expr]],
    scheme: Optional[Scheme] = None,
    config: Optional[Config] = None,
) -> DiscreteSection:
    """
    Solve the Euler-Lagrange equations by finite differences.

    Args:
        lagrangian: Lagrangian with a diagonal constant-coefficient operator
        grid: Grid over U; for leapfrog the time direction is the one whose
            coefficient sign differs
        data: Closed forms over t1..tk giving the first two time layers and the
            boundary values (leapfrog) or the boundary values (relaxation)
        scheme: Force a scheme instead of classifying the operator
        config: Relaxation tolerance and iteration cap

    Returns:
        DiscreteSection with centered-difference prolongation; ``metadata``
        holds the scheme, iteration count and the maximum EL residual

    Raises:
        CFLViolation: If the leapfrog steps violate the CFL bound
        NonConvergence: If relaxation stops on its iteration cap
        UnsupportedOperator: If the operator is outside the diagonal constant-coefficient
            class or ``scheme`` is not the one it calls for
    """
    config = config or get_global_config()
    chart = lagrangian.chart
    params = dict(lagrangian.parameter_values)
    seeded = sample_analytic(chart, data, grid, params, exact=False)
    values = seeded.values.copy()
    steps = grid.steps
    metadata: Dict[str, object] = {}

    for i, coefficients in enumerate(diagonal_coefficients(lagrangian)):
        kind, time_axis = classify(coefficients)
        if scheme is not None and scheme is not kind:
            raise UnsupportedOperator(
                f"Operator of component {i + 1} calls for {kind.value}, not {scheme.value}"
            )
        if kind is Scheme.LEAPFROG:
            layers = _leapfrog(values[i], coefficients, time_axis, steps)
            metadata[f"q{i + 1}"] = {
                "scheme": kind.value,
                "time_direction": time_axis + 1,
                "layers": layers,
            }
        else:
            values[i][tuple(slice(1, n - 1) for n in grid.shape)] = 0.0
            iterations, residual = _relax(
                values[i],
                coefficients,
                steps,
                config.get("numverify.relaxation_tolerance"),
                config.get("numverify.relaxation_max_iterations"),
            )
            metadata[f"q{i + 1}"] = {
                "scheme": kind.value,
                "iterations": iterations,
                "residual": residual,
            }
        logger.info("Component q%d solved by %s", i + 1, kind.value)

    first, second = fd_prolongation(values, grid)
    section = DiscreteSection(chart, grid, values, first, second, False, params, metadata)
    report = el_residual(section, lagrangian, config)
    metadata["el_max"] = report.max_abs
    logger.info("Finite-difference solution on %s: EL residual %.3e", grid, report.max_abs)
    return section


__all__ = ["diagonal_coefficients", "classify", "solve_fd"]
