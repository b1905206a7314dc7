"""
Lagrangian Functions

The Lagrangian L(q, v) on T^1_kQ and its energy E_L = v^i_a dL/dv^i_a - L.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

from ..config.constants import VarKind
from ..exceptions import UnknownSymbol
from ..expr.calculus import differentiate, free_symbols
from ..expr.nodes import Add, Expr, Mul
from ..expr.simplify import simplify
from ..geometry.chart import Chart
from ..geometry.fields import to_component

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Lagrangian:
    """
    A Lagrangian on a chart.

    Attributes:
        chart: Chart of T^1_kQ
        L: Canonical expression of the Lagrangian
        parameter_values: Optional numeric values of the parameters, used only
            by numerical verification
    """

    chart: Chart
    L: Expr
    parameter_values: Dict[str, float] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "L", simplify(self.L))
        for var in free_symbols(self.L):
            if not self.chart.owns(var):
                raise UnknownSymbol(var.name)
        for name in self.parameter_values:
            if name not in self.chart.params:
                raise UnknownSymbol(name)

    @classmethod
    def from_text(
        cls,
        chart: Chart,
        text: Union[str, Expr],
        parameter_values: Optional[Dict[str, float]] = None,
    ) -> "Lagrangian":
        """Lagrangian from expression text or an expression."""
        return cls(chart, to_component(chart, text), dict(parameter_values or {}))

    def dq(self, i: int) -> Expr:
        """dL/dq^i."""
        return differentiate(self.L, self.chart.q(i).var)

    def dv(self, i: int, alpha: int) -> Expr:
        """dL/dv^i_a."""
        return differentiate(self.L, self.chart.v(i, alpha).var)

    def depends_on_base(self) -> bool:
        return any(var.kind is VarKind.BASE for var in free_symbols(self.L))

    def __str__(self) -> str:
        return str(self.L)


def energy(lagrangian: Lagrangian) -> Expr:
    """
    Energy function E_L = C(L) - L.

    Args:
        lagrangian: Lagrangian

    Returns:
        Canonical expression of E_L
    """
    chart = lagrangian.chart
    terms = [
        Mul((chart.v(i, a), lagrangian.dv(i, a)))
        for i in range(1, chart.n + 1)
        for a in range(1, chart.k + 1)
    ]
    result = simplify(Add(tuple(terms) + (-lagrangian.L,)))
    logger.debug("E_L = %s", result)
    return result


__all__ = ["Lagrangian", "energy"]
