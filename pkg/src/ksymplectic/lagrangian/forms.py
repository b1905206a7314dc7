"""
Poincare-Cartan Forms

The semi-basic 1-forms theta^a_L = (dL/dv^i_a) dq^i and the 2-forms
omega^a_L = -d theta^a_L, stored as coefficient blocks:

    omega^a = a^a_ij dq^i ^ dq^j + g^ab_ij dq^i ^ dv^j_b
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..config.settings import Config
from ..expr.calculus import differentiate
from ..expr.nodes import ZERO, Add, Expr, Mul
from ..expr.printer import to_string
from ..expr.simplify import simplify
from ..geometry.chart import Chart
from ..geometry.fields import KVectorField, VectorField
from ..geometry.forms import OneForm, exterior_derivative
from ..utils.checks import CheckResult, check_zero
from ..utils.validation import validate_same_chart
from .hessian import hessian
from .lagrangian import Lagrangian, energy


@dataclass(frozen=True)
class SemiBasicOneForm:
    """theta = c_i dq^i for one direction."""

    chart: Chart
    direction: int
    coefficients: Tuple[Expr, ...]

    def to_one_form(self) -> OneForm:
        return OneForm(self.chart, self.coefficients, ((ZERO,) * self.chart.k,) * self.chart.n)

    def evaluate_on(self, X: VectorField) -> Expr:
        """theta(X) = c_i X^i."""
        return self.to_one_form().evaluate_on(X)

    def to_dict(self) -> Dict[str, str]:
        return self.to_one_form().to_dict()

    def __str__(self) -> str:
        return f"theta^{self.direction} = {self.to_one_form()}"


@dataclass(frozen=True)
class TwoForm:
    """
    omega^a in block form.

    Attributes:
        chart: Chart
        direction: The direction a
        a: Antisymmetric block ``a[i-1][j-1]`` = a^a_ij
        g: Mixed block ``g[b-1][i-1][j-1]`` = g^ab_ij
    """

    chart: Chart
    direction: int
    a: Tuple[Tuple[Expr, ...], ...]
    g: Tuple[Tuple[Tuple[Expr, ...], ...], ...]

    def contract(self, X: VectorField) -> OneForm:
        """
        Interior product i_X omega^a.

        dq^m coefficient: -2 a_mj X^j - g^ab_mj X^j_b;
        dv^j_b coefficient: g^ab_ij X^i.
        """
        validate_same_chart(self, X)
        n, k = self.chart.n, self.chart.k
        dq = []
        for m in range(n):
            terms: List[Expr] = []
            for j in range(n):
                if self.a[m][j] != ZERO:
                    terms.append(-2 * Mul((self.a[m][j], X.base[j])))
                for b in range(k):
                    if self.g[b][m][j] != ZERO:
                        terms.append(-Mul((self.g[b][m][j], X.fiber[j][b])))
            dq.append(simplify(Add(tuple(terms))) if terms else ZERO)
        dv = []
        for j in range(n):
            row = []
            for b in range(k):
                terms = [
                    Mul((self.g[b][i][j], X.base[i])) for i in range(n) if self.g[b][i][j] != ZERO
                ]
                row.append(simplify(Add(tuple(terms))) if terms else ZERO)
            dv.append(tuple(row))
        return OneForm(self.chart, tuple(dq), tuple(dv))

    def is_antisymmetric(self, config: Optional[Config] = None) -> CheckResult:
        n = self.chart.n
        return check_zero(
            (
                (f"a_{i + 1}{j + 1} + a_{j + 1}{i + 1}", simplify(self.a[i][j] + self.a[j][i]))
                for i in range(n)
                for j in range(i, n)
            ),
            config,
        )

    def to_dict(self) -> Dict[str, str]:
        """Printed non-zero block entries."""
        entries = {}
        n, k = self.chart.n, self.chart.k
        for i in range(n):
            for j in range(i + 1, n):
                if self.a[i][j] != ZERO:
                    entries[f"dq{i + 1}^dq{j + 1}"] = to_string(simplify(2 * self.a[i][j]))
        for b in range(k):
            for i in range(n):
                for j in range(n):
                    if self.g[b][i][j] != ZERO:
                        entries[f"dq{i + 1}^dv{j + 1}_{b + 1}"] = to_string(self.g[b][i][j])
        return entries

    def __str__(self) -> str:
        terms = [f"({value})*{basis}" for basis, value in self.to_dict().items()]
        return f"omega^{self.direction} = " + (" + ".join(terms) if terms else "0")


def cartan_one_forms(lagrangian: Lagrangian) -> List[SemiBasicOneForm]:
    """theta^a_L = (dL/dv^i_a) dq^i for a = 1..k."""
    chart = lagrangian.chart
    return [
        SemiBasicOneForm(
            chart, a, tuple(lagrangian.dv(i, a) for i in range(1, chart.n + 1))
        )
        for a in range(1, chart.k + 1)
    ]


def cartan_two_forms(lagrangian: Lagrangian) -> List[TwoForm]:
    """
    omega^a_L = -d theta^a_L in block form.

    a^a_ij = (d^2L/dq^j dv^i_a - d^2L/dq^i dv^j_a) / 2 and g^ab_ij is the
    velocity Hessian.
    """
    chart = lagrangian.chart
    blocks = hessian(lagrangian)
    forms = []
    for theta in cartan_one_forms(lagrangian):
        alpha = theta.direction
        mixed = [
            [
                differentiate(theta.coefficients[i], var)
                for var in chart.base_vars()
            ]
            for i in range(chart.n)
        ]
        a = tuple(
            tuple(simplify((mixed[i][j] - mixed[j][i]) / 2) for j in range(chart.n))
            for i in range(chart.n)
        )
        g = tuple(
            tuple(
                tuple(blocks.entry(alpha, beta, i, j) for j in range(1, chart.n + 1))
                for i in range(1, chart.n + 1)
            )
            for beta in range(1, chart.k + 1)
        )
        forms.append(TwoForm(chart, alpha, a, g))
    return forms


def contract_two_form(omega: TwoForm, X: VectorField) -> OneForm:
    """i_X omega^a as a 1-form."""
    return omega.contract(X)


def geometric_el_residual(xi: KVectorField, lagrangian: Lagrangian) -> OneForm:
    """
    The 1-form sum_a i_{xi_a} omega^a_L - dE_L.

    It vanishes exactly when xi solves the geometric Euler-Lagrange equation.
    """
    validate_same_chart(xi, lagrangian)
    chart = lagrangian.chart
    total = -exterior_derivative(chart, energy(lagrangian))
    for omega, field in zip(cartan_two_forms(lagrangian), xi):
        total = total + omega.contract(field)
    return total


__all__ = [
    "SemiBasicOneForm",
    "TwoForm",
    "cartan_one_forms",
    "cartan_two_forms",
    "contract_two_form",
    "geometric_el_residual",
]
