"""
Second-Order Partial Differential Equations

A SOPDE is the k-vector field xi_a = v^i_a d/dq^i + xi^i_ab d/dv^i_b, stored
through its coefficients xi^i_ab.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from ..config.settings import Config
from ..expr.nodes import ZERO, Expr
from ..expr.printer import to_string
from ..geometry.chart import Chart
from ..geometry.fields import KVectorField, VectorField, to_component
from ..geometry.operators import apply_J, liouville, sum_J
from ..exceptions import MissingCoefficient
from ..utils.checks import CheckResult, all_hold, check_zero
from ..utils.validation import validate_direction

logger = logging.getLogger(__name__)

CoefficientKey = Union[Tuple[int, int, int], str]


@dataclass(frozen=True)
class Sopde:
    """
    SOPDE on T^1_kQ.

    Attributes:
        chart: Chart
        coefficients: ``coefficients[i-1][a-1][b-1]`` = xi^i_ab; no symmetry
            in (a, b) is imposed
    """

    chart: Chart
    coefficients: Tuple[Tuple[Tuple[Expr, ...], ...], ...]

    def coefficient(self, i: int, alpha: int, beta: int) -> Expr:
        return self.coefficients[i - 1][alpha - 1][beta - 1]

    def field(self, alpha: int) -> VectorField:
        """The vector field xi_a."""
        chart = self.chart
        validate_direction(alpha, chart.k)
        base = tuple(chart.v(i, alpha) for i in range(1, chart.n + 1))
        fiber = tuple(self.coefficients[i][alpha - 1] for i in range(chart.n))
        return VectorField(chart, base, fiber)

    def as_kvector(self) -> KVectorField:
        return KVectorField(tuple(self.field(a) for a in range(1, self.chart.k + 1)))

    def apply(self, alpha: int, f: Expr) -> Expr:
        """The derivative xi_a(f)."""
        return self.field(alpha).apply(f)

    @classmethod
    def from_kvector(cls, xi: KVectorField, config: Optional[Config] = None) -> "Sopde":
        """
        Read the coefficients off a k-vector field.

        Raises:
            ValueError: If the k-vector field is not a SOPDE
        """
        result = is_sopde(xi, config)
        if not result:
            raise ValueError(f"k-vector field is not a SOPDE ({result.witness})")
        chart = xi.chart
        coefficients = tuple(
            tuple(xi.direction(a).fiber[i] for a in range(1, chart.k + 1))
            for i in range(chart.n)
        )
        return cls(chart, coefficients)

    def to_dict(self) -> Dict[str, str]:
        """Printed coefficients keyed by ``"i,a,b"``."""
        chart = self.chart
        return {
            f"{i},{a},{b}": to_string(self.coefficient(i, a, b))
            for i in range(1, chart.n + 1)
            for a in range(1, chart.k + 1)
            for b in range(1, chart.k + 1)
        }

    def __str__(self) -> str:
        return "\n".join(f"xi[{key}] = {value}" for key, value in self.to_dict().items())


def _key(key: CoefficientKey) -> Tuple[int, int, int]:
    if isinstance(key, str):
        parts = [part.strip() for part in key.split(",")]
        if len(parts) != 3 or not all(part.isdigit() for part in parts):
            raise ValueError(f"SOPDE coefficient key must look like 'i,a,b', got {key!r}")
        return int(parts[0]), int(parts[1]), int(parts[2])
    return tuple(key)  # type: ignore[return-value]


def make_sopde(
    chart: Chart,
    coefficients: Mapping[CoefficientKey, Any],
    allow_formal: bool = False,
) -> Sopde:
    """
    Build a SOPDE from its full coefficient table.

    Args:
        chart: Chart
        coefficients: Mapping (i, a, b) or ``"i,a,b"`` -> expression, number
            or expression text
        allow_formal: Accept formal symbols in coefficient text

    Returns:
        Sopde

    Raises:
        MissingCoefficient: If any (i, a, b) is absent
        ValueError: If a key is out of range
    """
    table: Dict[Tuple[int, int, int], Expr] = {}
    for key, value in coefficients.items():
        i, a, b = _key(key)
        if not (1 <= i <= chart.n and 1 <= a <= chart.k and 1 <= b <= chart.k):
            raise ValueError(f"SOPDE coefficient ({i},{a},{b}) is out of range for {chart}")
        table[(i, a, b)] = to_component(chart, value, allow_formal)

    missing = [key for key in _all_keys(chart) if key not in table]
    if missing:
        raise MissingCoefficient(missing)

    coefficient_table = tuple(
        tuple(
            tuple(table[(i, a, b)] for b in range(1, chart.k + 1))
            for a in range(1, chart.k + 1)
        )
        for i in range(1, chart.n + 1)
    )
    return Sopde(chart, coefficient_table)


def zero_sopde(chart: Chart) -> Sopde:
    """The free SOPDE with every coefficient zero."""
    return make_sopde(chart, {key: ZERO for key in _all_keys(chart)})


def formal_sopde(chart: Chart) -> Sopde:
    """The SOPDE whose coefficients are the symmetric jet symbols w^i_ab."""
    return make_sopde(chart, {(i, a, b): chart.w(i, a, b) for i, a, b in _all_keys(chart)})


def _all_keys(chart: Chart):
    return [
        (i, a, b)
        for i in range(1, chart.n + 1)
        for a in range(1, chart.k + 1)
        for b in range(1, chart.k + 1)
    ]


def is_sopde(xi: KVectorField, config: Optional[Config] = None) -> CheckResult:
    """Whether the base components of each xi_a are the velocities v^i_a."""
    chart = xi.chart
    return check_zero(
        (
            (f"xi_{a} base component {i}", xi.direction(a).base[i - 1] - chart.v(i, a))
            for a in range(1, chart.k + 1)
            for i in range(1, chart.n + 1)
        ),
        config,
    )


def satisfies_liouville_sum(xi: KVectorField, config: Optional[Config] = None) -> CheckResult:
    """Summed condition J^a(xi_a) = C."""
    return (sum_J(xi) - liouville(xi.chart)).is_zero(config)


def satisfies_liouville_per_direction(
    xi: KVectorField, config: Optional[Config] = None
) -> CheckResult:
    """J^a(xi_a) equals the direction-a part of C for every a."""
    chart = xi.chart
    C = liouville(chart)
    results = []
    for a in range(1, chart.k + 1):
        part = apply_J(a, VectorField.build(chart, base=C.fiber_column(a)))
        results.append((apply_J(a, xi.direction(a)) - part).is_zero(config))
    return all_hold(results)


__all__ = [
    "Sopde",
    "make_sopde",
    "zero_sopde",
    "formal_sopde",
    "is_sopde",
    "satisfies_liouville_sum",
    "satisfies_liouville_per_direction",
]
