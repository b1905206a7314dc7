"""
Euler-Lagrange Compatibility

Membership of a SOPDE in X^k_L and the Euler-Lagrange operator with formal
second-jet symbols.
"""

import logging
from typing import List, Optional

from ..config.settings import Config
from ..expr.calculus import differentiate
from ..expr.nodes import Add, Expr, Mul
from ..expr.simplify import simplify
from ..lagrangian.hessian import hessian
from ..lagrangian.lagrangian import Lagrangian
from ..utils.checks import CheckResult, check_zero
from ..utils.validation import validate_same_chart
from .sopde import Sopde

logger = logging.getLogger(__name__)


def xkl_residual(xi: Sopde, lagrangian: Lagrangian) -> List[Expr]:
    """
    Residuals xi_a(dL/dv^i_a) - dL/dq^i, one per i.

    The SOPDE lies in X^k_L exactly when every residual vanishes.
    """
    validate_same_chart(xi, lagrangian)
    chart = lagrangian.chart
    residuals = []
    for i in range(1, chart.n + 1):
        terms = [xi.apply(a, lagrangian.dv(i, a)) for a in range(1, chart.k + 1)]
        residuals.append(simplify(Add(tuple(terms) + (-lagrangian.dq(i),))))
    return residuals


def _first_order_part(lagrangian: Lagrangian, i: int) -> Expr:
    """d^2L/dq^j dv^i_a v^j_a - dL/dq^i."""
    chart = lagrangian.chart
    terms = [
        Mul((differentiate(lagrangian.dv(i, a), chart.q(j).var), chart.v(j, a)))
        for a in range(1, chart.k + 1)
        for j in range(1, chart.n + 1)
    ]
    return simplify(Add(tuple(terms) + (-lagrangian.dq(i),)))


def hessian_form_residual(xi: Sopde, lagrangian: Lagrangian) -> List[Expr]:
    """
    Residuals g^ab_ij xi^j_ab + d^2L/dq^j dv^i_a v^j_a - dL/dq^i.

    Equal to :func:`xkl_residual` written through the velocity Hessian.
    """
    validate_same_chart(xi, lagrangian)
    chart = lagrangian.chart
    blocks = hessian(lagrangian)
    residuals = []
    for i in range(1, chart.n + 1):
        terms = [
            Mul((blocks.entry(a, b, i, j), xi.coefficient(j, a, b)))
            for a in range(1, chart.k + 1)
            for b in range(1, chart.k + 1)
            for j in range(1, chart.n + 1)
        ]
        residuals.append(simplify(Add(tuple(terms) + (_first_order_part(lagrangian, i),))))
    return residuals


def in_xkl(xi: Sopde, lagrangian: Lagrangian, config: Optional[Config] = None) -> CheckResult:
    """Whether the SOPDE solves the Euler-Lagrange compatibility condition."""
    residuals = xkl_residual(xi, lagrangian)
    return check_zero(((f"equation {i}", r) for i, r in enumerate(residuals, start=1)), config)


def el_operator(lagrangian: Lagrangian) -> List[Expr]:
    """
    Euler-Lagrange residuals with formal second derivatives.

    Component i is g^ab_ij w^j_ab + d^2L/dq^j dv^i_a v^j_a - dL/dq^i, where
    w^j_ab are the symmetric jet symbols standing for d^2 phi^j/dt^a dt^b.
    """
    chart = lagrangian.chart
    blocks = hessian(lagrangian)
    residuals = []
    for i in range(1, chart.n + 1):
        terms = [
            Mul((blocks.entry(a, b, i, j), chart.w(j, a, b)))
            for a in range(1, chart.k + 1)
            for b in range(1, chart.k + 1)
            for j in range(1, chart.n + 1)
        ]
        residuals.append(simplify(Add(tuple(terms) + (_first_order_part(lagrangian, i),))))
    logger.debug("Euler-Lagrange operator: %s", [str(r) for r in residuals])
    return residuals


__all__ = ["xkl_residual", "hessian_form_residual", "in_xkl", "el_operator"]
