"""
Expression Nodes

Immutable expression trees over chart coordinates and named parameters,
including:
- VarId symbol identities (base, velocity, parameter, formal t and w symbols)
- Node classes Const, Sym, Add, Mul, Pow, Neg, Div, Func
- The total node order used by canonical forms
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Tuple, Union

from ..config.constants import FUNCTION_NAMES, VarKind

Number = Union[int, Fraction]


@dataclass(frozen=True)
class VarId:
    """
    Identity of a symbol.

    Indices are 1-based, as in the coordinate names: ``VarId(VELOCITY, 1, 2)``
    is ``v1_2``. Jet symbols keep ``direction <= direction2``.
    """

    kind: VarKind
    index: int = 0
    direction: int = 0
    direction2: int = 0
    label: str = ""

    @property
    def name(self) -> str:
        """Name of the symbol in the expression grammar."""
        if self.kind is VarKind.PARAMETER:
            return self.label
        if self.kind is VarKind.BASE:
            return f"q{self.index}"
        if self.kind is VarKind.VELOCITY:
            return f"v{self.index}_{self.direction}"
        if self.kind is VarKind.TIME:
            return f"t{self.direction}"
        return f"w{self.index}_{self.direction}_{self.direction2}"

    @property
    def is_coordinate(self) -> bool:
        return self.kind in (VarKind.BASE, VarKind.VELOCITY)

    def sort_key(self) -> Tuple[int, int, int, int, str]:
        return (self.kind.value, self.index, self.direction, self.direction2, self.label)

    def __str__(self) -> str:
        return self.name


def base_var(i: int) -> VarId:
    return VarId(VarKind.BASE, i)


def velocity_var(i: int, alpha: int) -> VarId:
    return VarId(VarKind.VELOCITY, i, alpha)


def parameter_var(name: str) -> VarId:
    return VarId(VarKind.PARAMETER, label=name)


def time_var(alpha: int) -> VarId:
    return VarId(VarKind.TIME, 0, alpha)


def jet_var(i: int, alpha: int, beta: int) -> VarId:
    """Symmetric second-jet symbol ``w^i_{ab}``."""
    a, b = sorted((alpha, beta))
    return VarId(VarKind.JET, i, a, b)


class Expr:
    """
    Base class of expression nodes.

    Arithmetic operators build raw (unsimplified) trees; use
    :func:`ksymplectic.expr.simplify` to reach the canonical form.
    """

    __slots__ = ()

    def __add__(self, other: Any) -> "Expr":
        return Add((self, as_expr(other)))

    def __radd__(self, other: Any) -> "Expr":
        return Add((as_expr(other), self))

    def __sub__(self, other: Any) -> "Expr":
        return Add((self, Neg(as_expr(other))))

    def __rsub__(self, other: Any) -> "Expr":
        return Add((as_expr(other), Neg(self)))

    def __mul__(self, other: Any) -> "Expr":
        return Mul((self, as_expr(other)))

    def __rmul__(self, other: Any) -> "Expr":
        return Mul((as_expr(other), self))

    def __truediv__(self, other: Any) -> "Expr":
        return Div(self, as_expr(other))

    def __rtruediv__(self, other: Any) -> "Expr":
        return Div(as_expr(other), self)

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __pow__(self, exponent: int) -> "Expr":
        if not isinstance(exponent, int):
            raise TypeError(f"Exponent must be an integer, got {type(exponent).__name__}")
        return Pow(self, exponent)

    def __str__(self) -> str:
        from .printer import to_string

        return to_string(self)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, eq=True)
class Sym(Expr):
    var: VarId


@dataclass(frozen=True, eq=True)
class Add(Expr):
    terms: Tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    factors: Tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Div(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True, eq=True)
class Func(Expr):
    name: str
    arg: Expr

    def __post_init__(self) -> None:
        if self.name not in FUNCTION_NAMES:
            raise ValueError(
                f"Unknown function '{self.name}'. Valid functions: {sorted(FUNCTION_NAMES)}"
            )


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def as_expr(value: Any) -> Expr:
    """Coerce ints, Fractions and VarIds to expression nodes."""
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not expressions")
    if isinstance(value, (int, Fraction)):
        return Const(Fraction(value))
    if isinstance(value, VarId):
        return Sym(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"Cannot convert non-finite float {value} to a constant")
        return Const(Fraction(repr(value)))
    raise TypeError(f"Cannot convert {type(value).__name__} to an expression")


def const(value: Number) -> Const:
    return Const(Fraction(value))


def sym(var: VarId) -> Sym:
    return Sym(var)


def func(name: str, arg: Any) -> Func:
    return Func(name, as_expr(arg))


@lru_cache(maxsize=1 << 16)
def node_key(e: Expr) -> Tuple[Any, ...]:
    """
    Total order on expression nodes.

    Keys start with a rank so that keys of different node types never compare
    element-wise on mismatched types. A power sorts right after its base.
    """
    if isinstance(e, Const):
        return (0, e.value)
    if isinstance(e, Sym):
        return (1,) + e.var.sort_key()
    if isinstance(e, Func):
        return (2, e.name, node_key(e.arg))
    if isinstance(e, Pow):
        return node_key(e.base) + (e.exponent,)
    if isinstance(e, Mul):
        return (4, tuple(node_key(f) for f in e.factors))
    if isinstance(e, Add):
        return (5, tuple(node_key(t) for t in e.terms))
    if isinstance(e, Div):
        return (6, node_key(e.num), node_key(e.den))
    if isinstance(e, Neg):
        return (7, node_key(e.arg))
    raise TypeError(f"Not an expression node: {type(e).__name__}")


def children(e: Expr) -> Tuple[Expr, ...]:
    """Direct sub-expressions of a node."""
    if isinstance(e, Add):
        return e.terms
    if isinstance(e, Mul):
        return e.factors
    if isinstance(e, (Pow,)):
        return (e.base,)
    if isinstance(e, (Neg, Func)):
        return (e.arg,)
    if isinstance(e, Div):
        return (e.num, e.den)
    return ()


__all__ = [
    "VarId",
    "Expr",
    "Const",
    "Sym",
    "Add",
    "Mul",
    "Pow",
    "Neg",
    "Div",
    "Func",
    "ZERO",
    "ONE",
    "as_expr",
    "const",
    "sym",
    "func",
    "node_key",
    "children",
    "base_var",
    "velocity_var",
    "parameter_var",
    "time_var",
    "jet_var",
]
