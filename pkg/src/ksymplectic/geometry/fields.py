"""
Vector Fields on T^1_kQ

Vector fields stored as canonical component expressions
X = X^i d/dq^i + X^i_a d/dv^i_a, and k-vector fields as k-tuples of them.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..config.constants import VarKind
from ..config.settings import Config
from ..expr.calculus import differentiate, free_symbols
from ..expr.nodes import ZERO, Add, Expr, Mul, VarId, as_expr
from ..expr.printer import to_string
from ..expr.simplify import simplify
from ..utils.checks import CheckResult, Witness, check_zero
from ..utils.validation import validate_direction, validate_same_chart
from .chart import Chart

logger = logging.getLogger(__name__)

ComponentValue = Union[Expr, str, int]


def to_component(chart: Chart, value: Any, allow_formal: bool = False) -> Expr:
    """Canonical expression from an expression, number or expression text."""
    if isinstance(value, str):
        return chart.expr(value, allow_formal)
    return simplify(as_expr(value))


def derivation(components: Sequence[Tuple[VarId, Expr]], f: Expr) -> Expr:
    """Sum of component * df/dvar over the non-zero components."""
    terms = [
        Mul((component, differentiate(f, var)))
        for var, component in components
        if component != ZERO
    ]
    if not terms:
        return ZERO
    return simplify(Add(tuple(terms)))


@dataclass(frozen=True)
class VectorField:
    """
    Vector field on T^1_kQ.

    Attributes:
        chart: Chart the components are expressed in
        base: Components X^i, i = 1..n
        fiber: Components X^i_a stored as ``fiber[i-1][a-1]``
    """

    chart: Chart
    base: Tuple[Expr, ...]
    fiber: Tuple[Tuple[Expr, ...], ...]

    def __post_init__(self) -> None:
        n, k = self.chart.n, self.chart.k
        if len(self.base) != n:
            raise ValueError(f"Expected {n} base components, got {len(self.base)}")
        if len(self.fiber) != n or any(len(row) != k for row in self.fiber):
            raise ValueError(f"Expected an {n}x{k} table of fiber components")
        object.__setattr__(self, "base", tuple(simplify(c) for c in self.base))
        object.__setattr__(
            self, "fiber", tuple(tuple(simplify(c) for c in row) for row in self.fiber)
        )

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, (ZERO,) * chart.n, ((ZERO,) * chart.k,) * chart.n)

    @classmethod
    def build(
        cls,
        chart: Chart,
        base: Optional[Sequence[ComponentValue]] = None,
        fiber: Optional[Sequence[Sequence[ComponentValue]]] = None,
        allow_formal: bool = False,
    ) -> "VectorField":
        """
        Build a field from component lists; missing lists are zero.

        Args:
            chart: Chart
            base: n base components
            fiber: n rows of k fiber components
            allow_formal: Accept formal symbols in component text
        """
        base_values = (
            [to_component(chart, c, allow_formal) for c in base] if base else [ZERO] * chart.n
        )
        if fiber:
            fiber_values = [[to_component(chart, c, allow_formal) for c in row] for row in fiber]
        else:
            fiber_values = [[ZERO] * chart.k for _ in range(chart.n)]
        return cls(chart, tuple(base_values), tuple(tuple(row) for row in fiber_values))

    @classmethod
    def from_mapping(
        cls,
        chart: Chart,
        components: Mapping[Union[str, VarId], ComponentValue],
        allow_formal: bool = False,
    ) -> "VectorField":
        """
        Build a field from a coordinate -> component mapping.

        Keys are coordinate names (``"q1"``, ``"v1_2"``) or VarIds; absent
        coordinates get zero components.
        """
        base = [ZERO] * chart.n
        fiber = [[ZERO] * chart.k for _ in range(chart.n)]
        for key, value in components.items():
            var = chart.resolve(key) if isinstance(key, str) else key
            if var is None or not var.is_coordinate or not chart.owns(var):
                raise ValueError(f"'{key}' is not a coordinate of {chart}")
            component = to_component(chart, value, allow_formal)
            if var.kind is VarKind.BASE:
                base[var.index - 1] = component
            else:
                fiber[var.index - 1][var.direction - 1] = component
        return cls(chart, tuple(base), tuple(tuple(row) for row in fiber))

    def component(self, var: VarId) -> Expr:
        if var.kind is VarKind.BASE:
            return self.base[var.index - 1]
        if var.kind is VarKind.VELOCITY:
            return self.fiber[var.index - 1][var.direction - 1]
        raise ValueError(f"'{var.name}' is not a coordinate")

    def items(self) -> List[Tuple[VarId, Expr]]:
        """(coordinate, component) pairs in coordinate order."""
        return [(var, self.component(var)) for var in self.chart.coordinates()]

    def fiber_column(self, alpha: int) -> Tuple[Expr, ...]:
        """Components X^i_a for fixed a."""
        validate_direction(alpha, self.chart.k)
        return tuple(row[alpha - 1] for row in self.fiber)

    def apply(self, f: Expr) -> Expr:
        """The derivation X(f)."""
        return derivation(self.items(), f)

    def map(self, operation: Any) -> "VectorField":
        """Field with ``operation`` applied to every component."""
        return VectorField(
            self.chart,
            tuple(operation(c) for c in self.base),
            tuple(tuple(operation(c) for c in row) for row in self.fiber),
        )

    def _combine(self, other: "VectorField", sign: int) -> "VectorField":
        validate_same_chart(self, other)
        return VectorField(
            self.chart,
            tuple(a + sign * b for a, b in zip(self.base, other.base)),
            tuple(
                tuple(a + sign * b for a, b in zip(row, other_row))
                for row, other_row in zip(self.fiber, other.fiber)
            ),
        )

    def __add__(self, other: "VectorField") -> "VectorField":
        return self._combine(other, 1)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self._combine(other, -1)

    def __neg__(self) -> "VectorField":
        return self.map(lambda c: -c)

    def scale(self, f: Any) -> "VectorField":
        """Pointwise product fX by a function."""
        factor = to_component(self.chart, f)
        return self.map(lambda c: factor * c)

    def __rmul__(self, f: Any) -> "VectorField":
        return self.scale(f)

    def is_zero(self, config: Optional[Config] = None) -> CheckResult:
        return check_zero(((var.name, c) for var, c in self.items()), config)

    def is_vertical(self, config: Optional[Config] = None) -> CheckResult:
        """All base components vanish."""
        return check_zero(
            ((var.name, c) for var, c in self.items() if var.kind is VarKind.BASE), config
        )

    def is_basic(self, config: Optional[Config] = None) -> CheckResult:
        """Field on Q: base components depend on q only and fibers vanish."""
        result = check_zero(
            ((var.name, c) for var, c in self.items() if var.kind is VarKind.VELOCITY), config
        )
        if not result:
            return result
        offending = [
            Witness(f"{var.name} depends on non-base symbols", c)
            for var, c in self.items()
            if var.kind is VarKind.BASE
            and any(s.kind not in (VarKind.BASE, VarKind.PARAMETER) for s in free_symbols(c))
        ]
        if offending:
            return CheckResult(False, result.grade, tuple(offending))
        return result

    def equals(self, other: "VectorField", config: Optional[Config] = None) -> CheckResult:
        return (self - other).is_zero(config)

    def nonzero_items(self) -> List[Tuple[VarId, Expr]]:
        return [(var, c) for var, c in self.items() if c != ZERO]

    def to_dict(self) -> Dict[str, str]:
        """Printed non-zero components keyed by coordinate name."""
        return {var.name: to_string(c) for var, c in self.nonzero_items()}

    def __str__(self) -> str:
        terms = [f"({to_string(c)})*d/d{var.name}" for var, c in self.nonzero_items()]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class KVectorField:
    """A k-tuple (X_1, ..., X_k) of vector fields on one chart."""

    fields: Tuple[VectorField, ...]

    def __post_init__(self) -> None:
        if not self.fields:
            raise ValueError("A k-vector field needs at least one component field")
        validate_same_chart(*self.fields)
        k = self.fields[0].chart.k
        if len(self.fields) != k:
            raise ValueError(f"Expected {k} component fields, got {len(self.fields)}")

    @property
    def chart(self) -> Chart:
        return self.fields[0].chart

    def direction(self, alpha: int) -> VectorField:
        """The field X_a (1-based)."""
        validate_direction(alpha, self.chart.k)
        return self.fields[alpha - 1]

    def __iter__(self) -> Iterator[VectorField]:
        return iter(self.fields)

    def __len__(self) -> int:
        return len(self.fields)

    def __str__(self) -> str:
        return "\n".join(f"X_{a} = {field}" for a, field in enumerate(self.fields, start=1))


__all__ = ["VectorField", "KVectorField", "derivation", "to_component"]
