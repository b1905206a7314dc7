"""
Converse Noether Analysis

Reconstructs the vector field generating a candidate conservation law
(i_X omega^a_L = df^a), checks the energy-flux identity, classifies
currents, and decides the Newtonoid criterion

    pi_xi(X)(L) = xi_a(g^a)   for every SOPDE xi

by treating the SOPDE coefficients as free symmetric jet symbols.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config.constants import Regularity, SolutionKind, VarKind
from ..config.settings import Config
from ..exceptions import SingularLagrangian
from ..expr.calculus import differentiate, free_symbols, substitute
from ..expr.nodes import ZERO, Add, Expr, VarId
from ..expr.printer import to_string
from ..expr.simplify import simplify
from ..geometry.fields import VectorField, to_component
from ..geometry.forms import exterior_derivative
from ..lagrangian.forms import cartan_one_forms, cartan_two_forms
from ..lagrangian.hessian import is_regular
from ..lagrangian.lagrangian import Lagrangian, energy
from ..sopde.sopde import Sopde, formal_sopde
from ..utils.checks import CheckResult, Witness, all_hold, check_zero
from ..utils.linear_system import solve_linear_system
from ..utils.validation import validate_same_chart
from .currents import CurrentTuple, conservation_check_sopde, sopde_divergence
from .newtonoid import project_newtonoid
from .predicates import is_cartan_symmetry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorSolution:
    """
    Solution set of i_X omega^a_L = df^a.

    Attributes:
        kind: Unique, Family or Inconsistent
        field: Particular solution (Unique/Family)
        kernel: Basis fields of the homogeneous solutions (Family)
        assumptions: Parameter expressions assumed nonzero by pivoting
        witness: First violated equation (Inconsistent)
        verified: Check that the particular solution satisfies every equation
        free: Unknowns left free, one per kernel field
    """

    kind: SolutionKind
    field: Optional[VectorField] = None
    kernel: Tuple[VectorField, ...] = ()
    assumptions: Tuple[Expr, ...] = ()
    witness: Optional[Witness] = None
    verified: Optional[CheckResult] = None
    free: Tuple[VarId, ...] = ()

    @property
    def consistent(self) -> bool:
        return self.kind is not SolutionKind.INCONSISTENT

    def contains(self, X: VectorField, config: Optional[Config] = None) -> bool:
        """Whether X lies in the solution set (particular field plus kernel span)."""
        if self.field is None:
            return False
        difference = X - self.field
        if difference.is_zero(config):
            return True
        if not self.kernel:
            return False
        combination = VectorField.zero(X.chart)
        for basis, var in zip(self.kernel, self.free):
            combination = combination + basis.scale(difference.component(var))
        return bool((difference - combination).is_zero(config))

    def describe(self) -> str:
        if self.kind is SolutionKind.INCONSISTENT:
            residual = to_string(self.witness.residual)
            return f"Inconsistent: {self.witness.label} must vanish but equals {residual}"
        text = f"{self.kind.value}: X = {self.field}"
        if self.kernel:
            text += " + span(" + ", ".join(str(k) for k in self.kernel) + ")"
        return text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.kind.value,
            "field": self.field.to_dict() if self.field is not None else None,
            "kernel": [basis.to_dict() for basis in self.kernel],
            "assumptions": [f"{to_string(a)} != 0" for a in self.assumptions],
            "witness": str(self.witness) if self.witness else None,
        }


def generating_field(
    f: CurrentTuple, lagrangian: Lagrangian, config: Optional[Config] = None
) -> GeneratorSolution:
    """
    Solve i_X omega^a_L = df^a for X.

    Unknowns are ordered X^1..X^n, then X^j_b by j and b. Equations are the
    dv block (a, b, j): g^ab_ij X^i = df^a/dv^j_b, followed by the dq block
    (a, m): -2 a^a_mj X^j - g^ab_mj X^j_b = df^a/dq^m.

    Raises:
        SingularLagrangian: If the Lagrangian is singular
    """
    validate_same_chart(f, lagrangian)
    regularity = is_regular(lagrangian, config)
    if regularity.verdict is Regularity.SINGULAR:
        raise SingularLagrangian("generating_field needs a Lagrangian that is not singular")

    chart = lagrangian.chart
    n, k = chart.n, chart.k
    omegas = cartan_two_forms(lagrangian)
    unknowns = chart.base_vars() + chart.velocity_vars()
    width = len(unknowns)
    column = {var: position for position, var in enumerate(unknowns)}

    rows: List[List[Expr]] = []
    rhs: List[Expr] = []
    labels: List[str] = []
    for omega in omegas:
        alpha = omega.direction
        for b in range(1, k + 1):
            for j in range(1, n + 1):
                row = [ZERO] * width
                for i in range(1, n + 1):
                    row[column[chart.q(i).var]] = omega.g[b - 1][i - 1][j - 1]
                rows.append(row)
                rhs.append(differentiate(f[alpha], chart.v(j, b).var))
                labels.append(f"df^{alpha}/dv{j}_{b}")
    for omega in omegas:
        alpha = omega.direction
        for m in range(1, n + 1):
            row = [ZERO] * width
            for j in range(1, n + 1):
                row[column[chart.q(j).var]] = simplify(-2 * omega.a[m - 1][j - 1])
                for b in range(1, k + 1):
                    row[column[chart.v(j, b).var]] = simplify(-omega.g[b - 1][m - 1][j - 1])
            rows.append(row)
            rhs.append(differentiate(f[alpha], chart.q(m).var))
            labels.append(f"df^{alpha}/dq{m}")

    solution = solve_linear_system(rows, rhs, labels, config)
    if not solution.consistent:
        logger.info("No generating field: %s", solution.witness)
        return GeneratorSolution(
            SolutionKind.INCONSISTENT,
            assumptions=solution.assumptions,
            witness=solution.witness,
        )

    def as_field(values: Sequence[Expr]) -> VectorField:
        return VectorField.from_mapping(chart, dict(zip(unknowns, values)))

    X = as_field(solution.values)
    kernel = tuple(as_field(vector) for vector in solution.kernel)
    verified = all_hold(
        check_zero(
            (
                (f"i_X omega^{omega.direction} - df^{omega.direction} [d{var.name}]", c)
                for var, c in (
                    omega.contract(X) - exterior_derivative(chart, f[omega.direction])
                ).items()
            ),
            config,
        )
        for omega in omegas
    )
    free = tuple(unknowns[position] for position in solution.free)
    return GeneratorSolution(solution.kind, X, kernel, solution.assumptions, None, verified, free)


def energy_flux_identity(
    X: VectorField,
    f: CurrentTuple,
    xi: Sopde,
    lagrangian: Lagrangian,
    config: Optional[Config] = None,
) -> CheckResult:
    """Whether X(E_L) = xi_a(f^a)."""
    validate_same_chart(X, f, xi, lagrangian)
    residual = simplify(X.apply(energy(lagrangian)) - sopde_divergence(f, xi))
    return check_zero([("X(E_L) - xi_a(f^a)", residual)], config)


@dataclass(frozen=True)
class CurrentClassification:
    """
    Conservation grades of a current.

    Attributes:
        sopde_conserved: xi_a(f^a) = 0 against the supplied SOPDE, if any
        generator: Solution of i_X omega^a_L = df^a
        generator_is_cartan: Cartan check of the generating field, if any
    """

    sopde_conserved: Optional[CheckResult]
    generator: GeneratorSolution
    generator_is_cartan: Optional[CheckResult]

    @property
    def generated(self) -> bool:
        return self.generator.consistent and bool(self.generator_is_cartan)

    @property
    def grades(self) -> List[str]:
        grades = []
        if self.sopde_conserved:
            grades.append("sopde-conserved")
        if self.generated:
            grades.append("generated")
        return grades


def classify_current(
    f: CurrentTuple,
    lagrangian: Lagrangian,
    xi: Optional[Sopde] = None,
    config: Optional[Config] = None,
) -> CurrentClassification:
    """Grade a current as sopde-conserved and/or generated by a Cartan symmetry."""
    conserved = conservation_check_sopde(f, xi, config) if xi is not None else None
    generator = generating_field(f, lagrangian, config)
    cartan = None
    if generator.field is not None:
        cartan = is_cartan_symmetry(generator.field, lagrangian, config)
    return CurrentClassification(conserved, generator, cartan)


@dataclass(frozen=True)
class MMReport:
    """
    Outcome of the Newtonoid criterion.

    Attributes:
        holds: Every coefficient of the formal expansion vanishes
        coefficients: Constant term and jet-symbol coefficients of the expansion
        zero_field: pi_xi(X) vanishes (X vertical), so the Cartan field is zero
        cartan_field: pi_xi(X) when it is known
        currents: f^a = theta^a_L(X) - g^a when the criterion holds
    """

    holds: CheckResult
    coefficients: Dict[str, Expr]
    zero_field: bool = False
    cartan_field: Optional[VectorField] = None
    currents: Optional[CurrentTuple] = None

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds.to_dict(),
            "coefficients": {label: to_string(c) for label, c in self.coefficients.items()},
            "zero_field": self.zero_field,
            "cartan_field": self.cartan_field.to_dict() if self.cartan_field else None,
            "currents": self.currents.to_dict() if self.currents else None,
        }


def marmo_mukunda_check(
    X: VectorField,
    g: Sequence[Any],
    lagrangian: Lagrangian,
    xi: Optional[Sopde] = None,
    config: Optional[Config] = None,
) -> MMReport:
    """
    Decide pi_xi(X)(L) = xi_a(g^a) for all SOPDEs xi.

    The difference is affine in the formal coefficients w^j_ab; the criterion
    holds iff its constant term and every coefficient vanish.

    Args:
        X: Vector field
        g: Functions g^1..g^k
        lagrangian: Lagrangian
        xi: Optional SOPDE in X^k_L used to return the Cartan field
        config: Configuration for zero tests

    Returns:
        MMReport
    """
    validate_same_chart(X, lagrangian)
    chart = lagrangian.chart
    potentials = [to_component(chart, value) for value in g]
    if len(potentials) != chart.k:
        raise ValueError(f"Expected {chart.k} functions g^a, got {len(potentials)}")

    formal = formal_sopde(chart)
    projected = project_newtonoid(X, formal)
    terms = [projected.apply(lagrangian.L)]
    terms.extend(-formal.apply(a, potentials[a - 1]) for a in range(1, chart.k + 1))
    difference = simplify(Add(tuple(terms)))

    coefficients: Dict[str, Expr] = {}
    jets = chart.jet_vars()
    coefficients["constant"] = substitute(difference, {w: ZERO for w in jets})
    for w in jets:
        coefficients[w.name] = differentiate(difference, w)
    holds = check_zero(coefficients.items(), config)
    if not holds:
        logger.info("Newtonoid criterion fails: %s", holds.witness)
        return MMReport(holds, coefficients)

    zero_field = bool(X.is_vertical(config))
    cartan_field: Optional[VectorField] = None
    if xi is not None:
        cartan_field = project_newtonoid(X, xi)
    elif not any(
        var.kind is VarKind.JET for _, c in projected.items() for var in free_symbols(c)
    ):
        cartan_field = projected
    thetas = cartan_one_forms(lagrangian)
    currents = CurrentTuple(
        chart,
        tuple(simplify(theta.evaluate_on(X) - g_a) for theta, g_a in zip(thetas, potentials)),
    )
    if zero_field:
        logger.warning("Newtonoid criterion holds with a vertical field; the Cartan field is zero")
    return MMReport(holds, coefficients, zero_field, cartan_field, currents)


__all__ = [
    "GeneratorSolution",
    "generating_field",
    "energy_flux_identity",
    "CurrentClassification",
    "classify_current",
    "MMReport",
    "marmo_mukunda_check",
]
