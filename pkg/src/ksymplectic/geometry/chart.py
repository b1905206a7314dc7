"""
Chart on T^1_kQ

The single global chart (q^i, v^i_a) of the bundle of k^1-velocities,
including:
- Construction with dimension and parameter-name validation
- Symbol lookup by name (used by the parser) and by index
- Coordinate enumeration in canonical order
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..config.constants import COORDINATE_PATTERNS, RESERVED_NAMES, VarKind
from ..exceptions import NameClash, UnknownName
from ..expr.nodes import (
    Expr,
    Sym,
    VarId,
    base_var,
    jet_var,
    parameter_var,
    time_var,
    velocity_var,
)
from ..expr.parser import parse as parse_expression
from ..expr.simplify import simplify
from ..utils.validation import validate_dimension, validate_direction, validate_index

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_COMPILED = {kind: re.compile(pattern + r"\Z") for kind, pattern in COORDINATE_PATTERNS.items()}


@dataclass(frozen=True)
class Chart:
    """
    Coordinates of T^1_kQ.

    Attributes:
        k: Number of directions (independent variables)
        n: Dimension of the base manifold Q
        params: Names of symbolic parameters
    """

    k: int
    n: int
    params: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _validate_chart(self.k, self.n, self.params)

    @property
    def dimension(self) -> int:
        return self.n * (self.k + 1)

    def q(self, i: int) -> Sym:
        validate_index(i, self.n)
        return Sym(base_var(i))

    def v(self, i: int, alpha: int) -> Sym:
        validate_index(i, self.n)
        validate_direction(alpha, self.k)
        return Sym(velocity_var(i, alpha))

    def t(self, alpha: int) -> Sym:
        validate_direction(alpha, self.k)
        return Sym(time_var(alpha))

    def w(self, i: int, alpha: int, beta: int) -> Sym:
        validate_index(i, self.n)
        validate_direction(alpha, self.k)
        validate_direction(beta, self.k)
        return Sym(jet_var(i, alpha, beta))

    def param(self, name: str) -> Sym:
        if name not in self.params:
            raise UnknownName(f"Parameter '{name}' is not declared; declared: {list(self.params)}")
        return Sym(parameter_var(name))

    def base_vars(self) -> List[VarId]:
        return [base_var(i) for i in range(1, self.n + 1)]

    def velocity_vars(self) -> List[VarId]:
        return [
            velocity_var(i, a) for i in range(1, self.n + 1) for a in range(1, self.k + 1)
        ]

    def coordinates(self) -> List[VarId]:
        """All coordinates: q^1..q^n, then v^i_a ordered by i, then a."""
        return self.base_vars() + self.velocity_vars()

    def time_vars(self) -> List[VarId]:
        return [time_var(a) for a in range(1, self.k + 1)]

    def jet_vars(self) -> List[VarId]:
        return [
            jet_var(i, a, b)
            for i in range(1, self.n + 1)
            for a in range(1, self.k + 1)
            for b in range(a, self.k + 1)
        ]

    def parameter_vars(self) -> List[VarId]:
        return [parameter_var(name) for name in self.params]

    def owns(self, var: VarId, allow_formal: bool = False) -> bool:
        """Whether a symbol belongs to this chart."""
        if var.kind is VarKind.PARAMETER:
            return var.label in self.params
        if var.kind is VarKind.BASE:
            return 1 <= var.index <= self.n
        if var.kind is VarKind.VELOCITY:
            return 1 <= var.index <= self.n and 1 <= var.direction <= self.k
        if not allow_formal:
            return False
        if var.kind is VarKind.TIME:
            return 1 <= var.direction <= self.k
        return (
            1 <= var.index <= self.n
            and 1 <= var.direction <= var.direction2 <= self.k
        )

    def resolve(self, name: str, allow_formal: bool = False) -> Optional[VarId]:
        """Symbol named ``name`` in this chart, or None."""
        if name in self.params:
            return parameter_var(name)
        for kind, pattern in _COMPILED.items():
            match = pattern.match(name)
            if match is None:
                continue
            numbers = [int(g) for g in match.groups()]
            if kind is VarKind.BASE:
                var = base_var(numbers[0])
            elif kind is VarKind.VELOCITY:
                var = velocity_var(numbers[0], numbers[1])
            elif kind is VarKind.TIME:
                var = time_var(numbers[0])
            else:
                if numbers[1] > numbers[2]:
                    return None
                var = jet_var(*numbers)
            return var if self.owns(var, allow_formal) else None
        return None

    def parse(self, text: str, allow_formal: bool = False) -> Expr:
        """Parse tree of ``text`` against this chart."""
        return parse_expression(text, self, allow_formal)

    def expr(self, text: str, allow_formal: bool = False) -> Expr:
        """Canonical expression of ``text``."""
        return simplify(self.parse(text, allow_formal))

    def __str__(self) -> str:
        params = ", ".join(self.params)
        return f"T^1_{self.k}R^{self.n}" + (f" [{params}]" if params else "")


def _validate_chart(k: int, n: int, params: Sequence[str]) -> None:
    validate_dimension(k, "k")
    validate_dimension(n, "n")

    seen = set()
    for name in params:
        if not isinstance(name, str) or not _IDENTIFIER.match(name):
            raise NameClash(f"Parameter name {name!r} is not a valid identifier")
        if name in RESERVED_NAMES:
            raise NameClash(f"Parameter name '{name}' is reserved")
        if any(pattern.match(name) for pattern in _COMPILED.values()):
            raise NameClash(f"Parameter name '{name}' clashes with a coordinate name")
        if name in seen:
            raise NameClash(f"Parameter name '{name}' is declared twice")
        seen.add(name)


def new_chart(k: int, n: int, params: Sequence[str] = ()) -> Chart:
    """
    Build the chart of T^1_kR^n.

    Args:
        k: Number of directions, k >= 1
        n: Dimension of the base, n >= 1
        params: Distinct parameter names

    Returns:
        Chart

    Raises:
        InvalidDimension: If k or n is not a positive integer
        NameClash: If a parameter name is invalid, reserved, duplicated or
            looks like a coordinate
    """
    return Chart(k, n, tuple(params))


__all__ = ["Chart", "new_chart"]
