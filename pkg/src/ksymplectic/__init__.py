"""
k-Symplectic Lagrangian Toolkit

Symbolic and numerical analysis of first-order Lagrangian field theories
on the k-tangent bundle T^1_kQ.

This package provides:
- An exact expression engine with parsing, differentiation and equality tests
- Poincare-Cartan forms, energy, velocity Hessian and regularity verdicts
- SOPDEs, the Euler-Lagrange conditions and integrability checks
- Cartan and dynamical symmetries, Noether currents and their converse
- Finite-difference verification of solutions and conservation laws
- The ``ksym`` command-line front end with a catalog of classical examples
"""

from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from .config import Config, Regularity, get_global_config
from .exceptions import KSymplecticError
from .expr import Expr, to_string
from .geometry import Chart, VectorField, new_chart
from .lagrangian import (
    HessianBlocks,
    Lagrangian,
    RegularityReport,
    SemiBasicOneForm,
    TwoForm,
    cartan_one_forms,
    cartan_two_forms,
    energy,
    hessian,
    is_regular,
)
from .sopde import Sopde, in_xkl, integrability_report, make_sopde
from .symmetry import (
    CurrentTuple,
    GeneratorSolution,
    NoetherResult,
    generating_field,
    is_cartan_symmetry,
    noether_current,
)
from .utils.checks import CheckResult
from .utils.validation import validate_dimension

__version__ = "0.1.0"
__description__ = "Symmetries and conservation laws of k-symplectic Lagrangian field theories"


class LagrangianAnalysis:
    """
    Main entry point for analysing one Lagrangian.

    Derived objects are computed on first access and cached; checks take
    fields, currents and SOPDEs built on the analysis chart.
    """

    def __init__(
        self,
        lagrangian: Union[str, Lagrangian],
        k: Optional[int] = None,
        n: Optional[int] = None,
        parameters: Optional[Mapping[str, Optional[float]]] = None,
        config: Optional[Config] = None,
    ):
        """
        Initialize the analysis.

        Args:
            lagrangian: Lagrangian, or its text in the expression grammar
            k: Number of independent variables (text input only)
            n: Dimension of Q (text input only)
            parameters: Parameter names with optional numeric values
            config: Configuration for zero tests (global configuration if omitted)
        """
        if isinstance(lagrangian, Lagrangian):
            self.lagrangian = lagrangian
        else:
            validate_dimension(k, "k")
            validate_dimension(n, "n")
            parameters = dict(parameters or {})
            chart = new_chart(k, n, tuple(parameters))
            values = {name: value for name, value in parameters.items() if value is not None}
            self.lagrangian = Lagrangian.from_text(chart, lagrangian, values)
        self.config = config or get_global_config()

        self._energy: Optional[Expr] = None
        self._theta: Optional[List[SemiBasicOneForm]] = None
        self._omega: Optional[List[TwoForm]] = None
        self._hessian: Optional[HessianBlocks] = None
        self._regularity: Optional[RegularityReport] = None

    @property
    def chart(self) -> Chart:
        return self.lagrangian.chart

    @property
    def energy(self) -> Expr:
        """E_L = v^i_a dL/dv^i_a - L."""
        if self._energy is None:
            self._energy = energy(self.lagrangian)
        return self._energy

    @property
    def theta(self) -> List[SemiBasicOneForm]:
        if self._theta is None:
            self._theta = cartan_one_forms(self.lagrangian)
        return self._theta

    @property
    def omega(self) -> List[TwoForm]:
        if self._omega is None:
            self._omega = cartan_two_forms(self.lagrangian)
        return self._omega

    @property
    def hessian(self) -> HessianBlocks:
        if self._hessian is None:
            self._hessian = hessian(self.lagrangian)
        return self._hessian

    @property
    def regularity(self) -> RegularityReport:
        if self._regularity is None:
            self._regularity = is_regular(self.lagrangian, self.config)
        return self._regularity

    @property
    def is_regular(self) -> bool:
        return self.regularity.verdict is Regularity.REGULAR

    # Builders on the analysis chart

    def field(self, components: Mapping[str, Any]) -> VectorField:
        """Vector field from ``{"q1": "1", "v1_1": ...}``."""
        return VectorField.from_mapping(self.chart, components)

    def current(self, components: Sequence[Any]) -> CurrentTuple:
        return CurrentTuple.build(self.chart, components)

    def sopde(self, coefficients: Mapping[Any, Any]) -> Sopde:
        return make_sopde(self.chart, coefficients)

    # Checks

    def is_cartan_symmetry(self, X: VectorField) -> CheckResult:
        return is_cartan_symmetry(X, self.lagrangian, self.config)

    def noether(self, X: VectorField) -> NoetherResult:
        """
        Noether current of a Cartan symmetry.

        Raises:
            NotCartan: If X is not a Cartan symmetry
            PotentialReconstructionFailed: If a potential cannot be reconstructed
        """
        return noether_current(X, self.lagrangian, self.config)

    def generating_field(self, f: Union[CurrentTuple, Sequence[Any]]) -> GeneratorSolution:
        """Solutions X of i_X omega^a_L = df^a."""
        if not isinstance(f, CurrentTuple):
            f = self.current(f)
        return generating_field(f, self.lagrangian, self.config)

    def check_sopde(self, xi: Sopde) -> Dict[str, Any]:
        """Integrability and membership in X^k_L of a SOPDE."""
        integrability = integrability_report(xi, self.config)
        return {
            "integrable": integrability.integrable,
            "brackets_vanish": integrability.brackets_vanish,
            "in_xkl": bool(in_xkl(xi, self.lagrangian, self.config)),
            "details": integrability.to_dict(),
        }

    def to_dict(self) -> Dict[str, Any]:
        """Derived objects printed in the expression grammar."""
        regularity = self.regularity
        return {
            "chart": str(self.chart),
            "lagrangian": to_string(self.lagrangian.L),
            "energy": to_string(self.energy),
            "theta": {f"theta^{t.direction}": t.to_dict() for t in self.theta},
            "omega": {f"omega^{w.direction}": w.to_dict() for w in self.omega},
            "hessian": [[to_string(e) for e in row] for row in self.hessian.matrix()],
            "regularity": regularity.verdict.value,
            "regularity_grade": regularity.grade.value,
            "assumptions": [f"{to_string(a)} != 0" for a in regularity.assumptions],
        }

    def generate_report(self) -> str:
        """
        Generate a text report of the derived objects.

        Returns:
            Formatted report string
        """
        data = self.to_dict()
        report_lines = []
        report_lines.append("=" * 70)
        report_lines.append("K-SYMPLECTIC LAGRANGIAN ANALYSIS REPORT")
        report_lines.append("=" * 70)
        report_lines.append("")

        report_lines.append("LAGRANGIAN:")
        report_lines.append(f"  Chart: {data['chart']}")
        report_lines.append(f"  L = {data['lagrangian']}")
        report_lines.append(f"  E_L = {data['energy']}")
        report_lines.append("")

        report_lines.append("POINCARE-CARTAN FORMS:")
        for name, entries in list(data["theta"].items()) + list(data["omega"].items()):
            terms = " + ".join(f"({value})*{basis}" for basis, value in entries.items())
            report_lines.append(f"  {name} = {terms or '0'}")
        report_lines.append("")

        report_lines.append("VELOCITY HESSIAN:")
        for row in data["hessian"]:
            report_lines.append("  [" + ", ".join(row) + "]")
        report_lines.append(
            f"  Regularity: {data['regularity']} ({data['regularity_grade']})"
        )
        for assumption in data["assumptions"]:
            report_lines.append(f"    assuming {assumption}")

        report_lines.append("=" * 70)

        return "\n".join(report_lines)

    def __repr__(self) -> str:
        return f"LagrangianAnalysis(L={to_string(self.lagrangian.L)}, {self.chart})"


# Convenience function for quick analysis
def analyze_lagrangian(
    lagrangian: str,
    k: int,
    n: int,
    parameters: Optional[Mapping[str, Optional[float]]] = None,
) -> Dict[str, Any]:
    """
    Analyse a Lagrangian given as text.

    Args:
        lagrangian: Lagrangian in the expression grammar
        k: Number of independent variables
        n: Dimension of Q
        parameters: Parameter names with optional numeric values

    Returns:
        Dictionary of the derived objects, see :meth:`LagrangianAnalysis.to_dict`
    """
    return LagrangianAnalysis(lagrangian, k, n, parameters).to_dict()


__all__ = [
    "LagrangianAnalysis",
    "analyze_lagrangian",
    "KSymplecticError",
    "Chart",
    "new_chart",
    "Lagrangian",
    "VectorField",
    "CurrentTuple",
    "Sopde",
    "make_sopde",
    "__version__",
]
