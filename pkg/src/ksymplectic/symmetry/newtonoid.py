"""
Newtonoid Projector and Star Product

pi_xi = Id + J^a o L_{xi_a} projects vector fields onto Newtonoid fields of
a SOPDE, and f * X = fX + xi_a(f) J^a X is the module action on them.
"""

from typing import Any, Optional

from ..config.settings import Config
from ..exceptions import NotNewtonoid
from ..geometry.fields import VectorField, to_component
from ..geometry.operators import apply_J
from ..sopde.sopde import Sopde
from ..utils.validation import validate_same_chart
from .predicates import is_newtonoid


def project_newtonoid(X: VectorField, xi: Sopde) -> VectorField:
    """pi_xi(X): base components X^i and fiber components xi_a(X^i)."""
    validate_same_chart(X, xi)
    chart = X.chart
    fiber = tuple(
        tuple(xi.apply(a, X.base[i]) for a in range(1, chart.k + 1)) for i in range(chart.n)
    )
    return VectorField(chart, X.base, fiber)


def star_product(
    f: Any, X: VectorField, xi: Sopde, config: Optional[Config] = None
) -> VectorField:
    """
    f * X = fX + xi_a(f) J^a X.

    Raises:
        NotNewtonoid: If X is not a Newtonoid field of ``xi``
    """
    check = is_newtonoid(X, xi, config)
    if not check:
        raise NotNewtonoid(f"Star product needs a Newtonoid field ({check.witness})")
    f = to_component(X.chart, f)
    result = X.scale(f)
    for a in range(1, X.chart.k + 1):
        result = result + apply_J(a, X).scale(xi.apply(a, f))
    return result


__all__ = ["project_newtonoid", "star_product"]
