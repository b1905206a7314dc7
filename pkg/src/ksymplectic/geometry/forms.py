"""
One-Forms on T^1_kQ

General 1-forms b = b_i dq^i + b^a_i dv^i_a stored as coefficient tables,
with exterior derivatives of functions, closedness tests, contraction with
vector fields and Lie derivatives.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..config.constants import VarKind
from ..config.settings import Config
from ..expr.calculus import differentiate
from ..expr.nodes import ZERO, Add, Expr, Mul, VarId
from ..expr.printer import to_string
from ..expr.simplify import simplify
from ..utils.checks import CheckResult, check_zero
from ..utils.validation import validate_same_chart
from .chart import Chart
from .fields import VectorField, to_component


@dataclass(frozen=True)
class OneForm:
    """
    1-form on T^1_kQ.

    Attributes:
        chart: Chart
        dq: Coefficients of dq^i
        dv: Coefficients of dv^i_a stored as ``dv[i-1][a-1]``
    """

    chart: Chart
    dq: Tuple[Expr, ...]
    dv: Tuple[Tuple[Expr, ...], ...]

    def __post_init__(self) -> None:
        n, k = self.chart.n, self.chart.k
        if len(self.dq) != n or len(self.dv) != n or any(len(row) != k for row in self.dv):
            raise ValueError(f"Expected {n} dq coefficients and an {n}x{k} dv table")
        object.__setattr__(self, "dq", tuple(simplify(c) for c in self.dq))
        object.__setattr__(self, "dv", tuple(tuple(simplify(c) for c in row) for row in self.dv))

    @classmethod
    def zero(cls, chart: Chart) -> "OneForm":
        return cls(chart, (ZERO,) * chart.n, ((ZERO,) * chart.k,) * chart.n)

    @classmethod
    def from_coefficients(cls, chart: Chart, coefficients: Dict[VarId, Expr]) -> "OneForm":
        """Form with the given coefficient per coordinate differential."""
        dq = [ZERO] * chart.n
        dv = [[ZERO] * chart.k for _ in range(chart.n)]
        for var, value in coefficients.items():
            value = to_component(chart, value)
            if var.kind is VarKind.BASE:
                dq[var.index - 1] = value
            elif var.kind is VarKind.VELOCITY:
                dv[var.index - 1][var.direction - 1] = value
            else:
                raise ValueError(f"'{var.name}' is not a coordinate")
        return cls(chart, tuple(dq), tuple(tuple(row) for row in dv))

    def coefficient(self, var: VarId) -> Expr:
        if var.kind is VarKind.BASE:
            return self.dq[var.index - 1]
        if var.kind is VarKind.VELOCITY:
            return self.dv[var.index - 1][var.direction - 1]
        raise ValueError(f"'{var.name}' is not a coordinate")

    def items(self) -> List[Tuple[VarId, Expr]]:
        return [(var, self.coefficient(var)) for var in self.chart.coordinates()]

    def _combine(self, other: "OneForm", sign: int) -> "OneForm":
        validate_same_chart(self, other)
        return OneForm(
            self.chart,
            tuple(a + sign * b for a, b in zip(self.dq, other.dq)),
            tuple(
                tuple(a + sign * b for a, b in zip(row, other_row))
                for row, other_row in zip(self.dv, other.dv)
            ),
        )

    def __add__(self, other: "OneForm") -> "OneForm":
        return self._combine(other, 1)

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self._combine(other, -1)

    def __neg__(self) -> "OneForm":
        return OneForm(
            self.chart,
            tuple(-c for c in self.dq),
            tuple(tuple(-c for c in row) for row in self.dv),
        )

    def evaluate_on(self, X: VectorField) -> Expr:
        """The function b(X)."""
        validate_same_chart(self, X)
        terms = [Mul((c, X.component(var))) for var, c in self.items() if c != ZERO]
        return simplify(Add(tuple(terms))) if terms else ZERO

    def lie_derivative(self, X: VectorField) -> "OneForm":
        """L_X b with coefficients X(b_A) + b_B dX^B/dx^A."""
        validate_same_chart(self, X)
        items = self.items()
        coefficients = {}
        for var, c in items:
            terms = [X.apply(c)]
            terms.extend(
                Mul((b, differentiate(X.component(other), var)))
                for other, b in items
                if b != ZERO
            )
            coefficients[var] = simplify(Add(tuple(terms)))
        return OneForm.from_coefficients(self.chart, coefficients)

    def is_semi_basic(self, config: Optional[Config] = None) -> CheckResult:
        """No dv components."""
        return check_zero(
            ((f"d{var.name}", c) for var, c in self.items() if var.kind is VarKind.VELOCITY),
            config,
        )

    def is_zero(self, config: Optional[Config] = None) -> CheckResult:
        return check_zero(((f"d{var.name}", c) for var, c in self.items()), config)

    def equals(self, other: "OneForm", config: Optional[Config] = None) -> CheckResult:
        return (self - other).is_zero(config)

    def closure_defects(self) -> List[Tuple[str, Expr]]:
        """Labelled coefficients db_B/dx^A - db_A/dx^B of db, for A < B."""
        items = self.items()
        defects = []
        for position, (var_a, b_a) in enumerate(items):
            for var_b, b_b in items[position + 1 :]:
                residual = simplify(differentiate(b_b, var_a) - differentiate(b_a, var_b))
                defects.append((f"d{var_a.name}^d{var_b.name}", residual))
        return defects

    def is_closed(self, config: Optional[Config] = None) -> CheckResult:
        """Whether db = 0."""
        return check_zero(self.closure_defects(), config)

    def to_dict(self) -> Dict[str, str]:
        return {f"d{var.name}": to_string(c) for var, c in self.items() if c != ZERO}

    def __str__(self) -> str:
        terms = [f"({to_string(c)})*d{var.name}" for var, c in self.items() if c != ZERO]
        return " + ".join(terms) if terms else "0"


def exterior_derivative(chart: Chart, f: Expr) -> OneForm:
    """The differential df."""
    return OneForm.from_coefficients(
        chart, {var: differentiate(f, var) for var in chart.coordinates()}
    )


__all__ = ["OneForm", "exterior_derivative"]
