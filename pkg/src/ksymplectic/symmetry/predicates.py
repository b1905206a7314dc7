"""
Symmetry Predicates

Cartan symmetries of a Lagrangian, and dynamical symmetries and Newtonoid
fields of a SOPDE.
"""

import logging
from typing import List, Optional, Tuple

from ..config.settings import Config
from ..expr.nodes import Expr
from ..expr.simplify import simplify
from ..geometry.fields import VectorField
from ..geometry.operators import lie_bracket
from ..lagrangian.forms import cartan_two_forms
from ..lagrangian.lagrangian import Lagrangian, energy
from ..sopde.sopde import Sopde
from ..utils.checks import CheckResult, all_hold, check_zero
from ..utils.validation import validate_same_chart

logger = logging.getLogger(__name__)


def cartan_residuals(X: VectorField, lagrangian: Lagrangian) -> List[Tuple[str, Expr]]:
    """
    Labelled residuals of the Cartan conditions.

    L_X omega^a = d(i_X omega^a) vanishes exactly when the 1-form i_X omega^a
    is closed; the last residual is X(E_L).
    """
    validate_same_chart(X, lagrangian)
    residuals = []
    for omega in cartan_two_forms(lagrangian):
        for label, defect in omega.contract(X).closure_defects():
            residuals.append((f"L_X omega^{omega.direction} [{label}]", defect))
    residuals.append(("X(E_L)", X.apply(energy(lagrangian))))
    return residuals


def is_cartan_symmetry(
    X: VectorField, lagrangian: Lagrangian, config: Optional[Config] = None
) -> CheckResult:
    """Whether L_X omega^a_L = 0 for every a and X(E_L) = 0."""
    return check_zero(cartan_residuals(X, lagrangian), config)


def is_dynamical_symmetry(
    X: VectorField, xi: Sopde, config: Optional[Config] = None
) -> CheckResult:
    """Whether [xi_a, X] = 0 for every a."""
    validate_same_chart(X, xi)
    return all_hold(
        lie_bracket(xi.field(a), X).is_zero(config) for a in range(1, xi.chart.k + 1)
    )


def is_newtonoid(X: VectorField, xi: Sopde, config: Optional[Config] = None) -> CheckResult:
    """Whether X^i_a = xi_a(X^i) for all i and a."""
    validate_same_chart(X, xi)
    chart = X.chart
    return check_zero(
        (
            (
                f"X^{i}_{a} - xi_{a}(X^{i})",
                simplify(X.fiber[i - 1][a - 1] - xi.apply(a, X.base[i - 1])),
            )
            for i in range(1, chart.n + 1)
            for a in range(1, chart.k + 1)
        ),
        config,
    )


__all__ = [
    "cartan_residuals",
    "is_cartan_symmetry",
    "is_dynamical_symmetry",
    "is_newtonoid",
]
