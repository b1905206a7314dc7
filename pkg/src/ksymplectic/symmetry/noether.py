"""
Noether Currents

Derives the conservation law of a Cartan symmetry X:

    L_X theta^a_L = d g^a,    f^a = theta^a_L(X) - g^a

The potentials g^a are reconstructed from the closed 1-forms L_X theta^a_L
by radial homotopy integration from the chart origin, which is exact for
coefficients polynomial in the coordinates (parameters and parameter-only
denominators allowed).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config.constants import VarKind
from ..config.settings import Config
from ..exceptions import NotCartan, PotentialReconstructionFailed
from ..expr.calculus import differentiate, free_symbols
from ..expr.nodes import ZERO, Add, Expr, Mul, Sym
from ..expr.simplify import canonical_rational, poly_to_expr, simplify
from ..geometry.fields import VectorField, to_component
from ..geometry.forms import OneForm, exterior_derivative
from ..geometry.operators import complete_lift, vertical_lift
from ..lagrangian.forms import cartan_one_forms, cartan_two_forms
from ..lagrangian.lagrangian import Lagrangian
from ..utils.checks import CheckResult, all_hold, check_zero
from .currents import CurrentTuple
from .predicates import is_cartan_symmetry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NoetherResult:
    """
    Conservation law induced by a Cartan symmetry.

    Attributes:
        field: The Cartan symmetry X
        currents: f^a = theta^a_L(X) - g^a
        potentials: g^a with d g^a = L_X theta^a_L
        forms: The closed 1-forms L_X theta^a_L
        certificate: Check of d g^a = L_X theta^a_L and i_X omega^a_L = d f^a
    """

    field: VectorField
    currents: CurrentTuple
    potentials: Tuple[Expr, ...]
    forms: Tuple[OneForm, ...]
    certificate: CheckResult

    def to_dict(self) -> Dict[str, Any]:
        return {
            "currents": self.currents.to_dict(),
            "potentials": {f"g^{a}": str(g) for a, g in enumerate(self.potentials, start=1)},
            "certificate": self.certificate.to_dict(),
        }


def _coordinate_free(atom: Expr) -> bool:
    return all(var.kind is VarKind.PARAMETER for var in free_symbols(atom))


def _labelled(prefix: str, form: OneForm) -> List[Tuple[str, Expr]]:
    return [(f"{prefix} [d{var.name}]", c) for var, c in form.items()]


def radial_potential(form: OneForm) -> Expr:
    """
    Potential g of a closed 1-form with g(0) = 0.

    g(p) = integral over t in [0, 1] of b_A(tp) p^A, evaluated monomial by
    monomial: a coefficient term c m(p) contributes c m(p) p^A / (deg m + 1).

    Raises:
        PotentialReconstructionFailed: If a coefficient is not polynomial in
            the coordinates
    """
    terms: List[Expr] = []
    for var, coefficient in form.items():
        if coefficient == ZERO:
            continue
        rational = canonical_rational(coefficient)
        if not all(_coordinate_free(atom) for atom in rational.den.atoms()):
            raise PotentialReconstructionFailed(
                f"Coefficient of d{var.name} has a coordinate-dependent denominator", [form]
            )
        denominator = poly_to_expr(rational.den)
        for mono, c in rational.num.terms.items():
            degree = 0
            for atom, exponent in mono:
                if isinstance(atom, Sym) and atom.var.is_coordinate:
                    degree += exponent
                elif not _coordinate_free(atom):
                    raise PotentialReconstructionFailed(
                        f"Coefficient of d{var.name} contains {atom}, outside the "
                        f"polynomial class",
                        [form],
                    )
            factors: List[Expr] = [atom if e == 1 else atom**e for atom, e in mono]
            term = Mul(tuple([Fraction(c, degree + 1) * Sym(var)] + factors))
            terms.append(term / denominator)
    potential = simplify(Add(tuple(terms))) if terms else ZERO
    logger.debug("Radial potential: %s", potential)
    return potential


def noether_current(
    X: VectorField, lagrangian: Lagrangian, config: Optional[Config] = None
) -> NoetherResult:
    """
    Conservation law of a Cartan symmetry.

    Args:
        X: Cartan symmetry of ``lagrangian``
        lagrangian: Lagrangian
        config: Configuration for zero tests

    Returns:
        NoetherResult carrying currents, potentials and certificate

    Raises:
        NotCartan: If X is not a Cartan symmetry
        PotentialReconstructionFailed: If a potential cannot be reconstructed;
            the exception carries the closed forms L_X theta^a_L
    """
    cartan = is_cartan_symmetry(X, lagrangian, config)
    if not cartan:
        raise NotCartan(f"Vector field is not a Cartan symmetry ({cartan.witness})")

    chart = lagrangian.chart
    thetas = cartan_one_forms(lagrangian)
    forms = tuple(theta.to_one_form().lie_derivative(X) for theta in thetas)
    for alpha, eta in enumerate(forms, start=1):
        closed = eta.is_closed(config)
        if not closed:
            raise PotentialReconstructionFailed(
                f"L_X theta^{alpha} is not closed ({closed.witness})", list(forms)
            )

    try:
        potentials = tuple(radial_potential(eta) for eta in forms)
    except PotentialReconstructionFailed as exc:
        raise PotentialReconstructionFailed(str(exc), list(forms)) from exc

    currents = CurrentTuple(
        chart,
        tuple(simplify(theta.evaluate_on(X) - g) for theta, g in zip(thetas, potentials)),
    )

    checks = []
    for alpha, (eta, g) in enumerate(zip(forms, potentials), start=1):
        residual = exterior_derivative(chart, g) - eta
        checks.append(check_zero(_labelled(f"dg^{alpha} - L_X theta^{alpha}", residual), config))
    for omega, f in zip(cartan_two_forms(lagrangian), currents):
        bridge = omega.contract(X) - exterior_derivative(chart, f)
        label = f"i_X omega^{omega.direction} - df^{omega.direction}"
        checks.append(check_zero(_labelled(label, bridge), config))
    certificate = all_hold(checks)
    if not certificate:
        raise PotentialReconstructionFailed(
            f"Potential certificate failed ({certificate.witness})", list(forms)
        )
    logger.info("Noether current: %s", currents)
    return NoetherResult(X, currents, potentials, forms, certificate)


def complete_lift_currents(
    Z: VectorField,
    g: Sequence[Any],
    lagrangian: Lagrangian,
    config: Optional[Config] = None,
) -> CurrentTuple:
    """
    Currents f^a = Z^{V_a}(L) - g^a of a field Z on Q.

    Requires Z^C(L) = v^i_a dg^a/dq^i.

    Raises:
        NotBasic: If Z is not a field on Q
        NotCartan: If the condition on Z^C(L) fails
    """
    chart = lagrangian.chart
    potentials = [to_component(chart, value) for value in g]
    if len(potentials) != chart.k:
        raise ValueError(f"Expected {chart.k} functions g^a, got {len(potentials)}")
    lift = complete_lift(Z)
    terms = [
        Mul((chart.v(i, a), differentiate(potentials[a - 1], chart.q(i).var)))
        for i in range(1, chart.n + 1)
        for a in range(1, chart.k + 1)
    ]
    condition = check_zero(
        [("Z^C(L) - v^i_a dg^a/dq^i", simplify(lift.apply(lagrangian.L) - Add(tuple(terms))))],
        config,
    )
    if not condition:
        raise NotCartan(f"Complete lift condition fails ({condition.witness})")
    return CurrentTuple(
        chart,
        tuple(
            simplify(vertical_lift(Z, a).apply(lagrangian.L) - potentials[a - 1])
            for a in range(1, chart.k + 1)
        ),
    )


__all__ = ["NoetherResult", "radial_potential", "noether_current", "complete_lift_currents"]
