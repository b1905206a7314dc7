"""
Canonical Operators

The canonical geometric operators of T^1_kQ, including:
- Coordinate fields d/dq^i and d/dv^i_a
- The Liouville field C = v^i_a d/dv^i_a
- The k-tangent structure J^a
- Lie brackets of vector fields
- Complete and vertical lifts of fields on Q
"""

import logging
from typing import Union

from ..exceptions import NotBasic
from ..expr.calculus import differentiate
from ..expr.nodes import ONE, ZERO, Add, Expr, Mul, VarId
from ..expr.simplify import simplify
from ..utils.validation import validate_direction, validate_same_chart
from .chart import Chart
from .fields import KVectorField, VectorField

logger = logging.getLogger(__name__)


def coordinate_field(chart: Chart, var: Union[VarId, str]) -> VectorField:
    """
    The coordinate vector field d/d(var).

    Args:
        chart: Chart
        var: Coordinate symbol or its name (``"q1"``, ``"v2_1"``)

    Returns:
        VectorField with a single unit component
    """
    return VectorField.from_mapping(chart, {var: ONE})


def liouville(chart: Chart) -> VectorField:
    """Liouville field C: zero base components, fiber components v^i_a."""
    fiber = tuple(
        tuple(chart.v(i, a) for a in range(1, chart.k + 1)) for i in range(1, chart.n + 1)
    )
    return VectorField(chart, (ZERO,) * chart.n, fiber)


def apply_J(alpha: int, X: VectorField) -> VectorField:
    """
    The k-tangent structure J^a.

    Moves the base components of X into fiber direction ``alpha``:
    (J^a X)^i = 0 and (J^a X)^i_b = delta^a_b X^i.
    """
    chart = X.chart
    validate_direction(alpha, chart.k)
    fiber = tuple(
        tuple(X.base[i] if b == alpha else ZERO for b in range(1, chart.k + 1))
        for i in range(chart.n)
    )
    return VectorField(chart, (ZERO,) * chart.n, fiber)


def sum_J(xi: KVectorField) -> VectorField:
    """The summed contraction J^a(X_a) over all directions."""
    chart = xi.chart
    fiber = tuple(
        tuple(xi.direction(b).base[i] for b in range(1, chart.k + 1)) for i in range(chart.n)
    )
    return VectorField(chart, (ZERO,) * chart.n, fiber)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """
    Lie bracket [X, Y] with components X(Y^A) - Y(X^A).

    Raises:
        ValueError: If the fields live on different charts
    """
    validate_same_chart(X, Y)
    chart = X.chart

    def component(var: VarId) -> Expr:
        return simplify(X.apply(Y.component(var)) - Y.apply(X.component(var)))

    base = tuple(component(var) for var in chart.base_vars())
    fiber = tuple(
        tuple(component(chart.v(i, a).var) for a in range(1, chart.k + 1))
        for i in range(1, chart.n + 1)
    )
    return VectorField(chart, base, fiber)


def _require_basic(Z: VectorField) -> None:
    result = Z.is_basic()
    if not result:
        raise NotBasic(f"Vector field is not a field on the base manifold ({result.witness})")


def complete_lift(Z: VectorField) -> VectorField:
    """
    Complete lift Z^C = Z^i d/dq^i + v^i_a (dZ^j/dq^i) d/dv^j_a.

    Raises:
        NotBasic: If Z is not a field on Q
    """
    _require_basic(Z)
    chart = Z.chart
    fiber = []
    for j in range(chart.n):
        row = []
        for a in range(1, chart.k + 1):
            terms = [
                Mul((chart.v(i, a), differentiate(Z.base[j], var)))
                for i, var in enumerate(chart.base_vars(), start=1)
            ]
            row.append(simplify(Add(tuple(terms))) if terms else ZERO)
        fiber.append(tuple(row))
    return VectorField(chart, Z.base, tuple(fiber))


def vertical_lift(Z: VectorField, alpha: int) -> VectorField:
    """
    Vertical lift Z^{V_a} = J^a Z^C.

    Raises:
        NotBasic: If Z is not a field on Q
    """
    return apply_J(alpha, complete_lift(Z))


__all__ = [
    "coordinate_field",
    "liouville",
    "apply_J",
    "sum_J",
    "lie_bracket",
    "complete_lift",
    "vertical_lift",
]
