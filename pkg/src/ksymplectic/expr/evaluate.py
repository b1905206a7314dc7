"""
Numeric Evaluation

Evaluates expressions in IEEE double precision, either at a single point
(``evaluate``) or element-wise over numpy arrays (``evaluate_array``) for
grid work.
"""

import math
from typing import Callable, Dict, Mapping, Optional, Union

import numpy as np

from ..config.constants import VarKind
from ..exceptions import DomainError, UnboundSymbol
from .nodes import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sym, VarId

ArrayLike = Union[float, np.ndarray]

_SCALAR_FUNCTIONS: Dict[str, Callable[[float], float]] = {
    "sqrt": math.sqrt,
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "log": math.log,
}

_ARRAY_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
}


def _lookup(
    var: VarId,
    values: Mapping[VarId, ArrayLike],
    params: Mapping[str, float],
) -> ArrayLike:
    if var in values:
        return values[var]
    if var.kind is VarKind.PARAMETER and var.label in params:
        return params[var.label]
    raise UnboundSymbol(var.name)


def evaluate(
    e: Expr,
    values: Mapping[VarId, float],
    params: Optional[Mapping[str, float]] = None,
) -> float:
    """
    Evaluate an expression at a point.

    Args:
        e: Expression
        values: Values of the coordinate (and formal) symbols
        params: Values of named parameters

    Returns:
        Value as a float

    Raises:
        UnboundSymbol: If a free symbol has no value
        DomainError: On log of a non-positive number, sqrt of a negative
            number, division by zero or overflow
    """
    params = params or {}

    def walk(node: Expr) -> float:
        if isinstance(node, Const):
            return float(node.value)
        if isinstance(node, Sym):
            return float(_lookup(node.var, values, params))
        if isinstance(node, Add):
            return math.fsum(walk(t) for t in node.terms)
        if isinstance(node, Mul):
            result = 1.0
            for factor in node.factors:
                result *= walk(factor)
            return result
        if isinstance(node, Neg):
            return -walk(node.arg)
        if isinstance(node, Div):
            den = walk(node.den)
            if den == 0.0:
                raise DomainError("Division by zero during evaluation")
            return walk(node.num) / den
        if isinstance(node, Pow):
            base = walk(node.base)
            if base == 0.0 and node.exponent < 0:
                raise DomainError("Zero raised to a negative power")
            try:
                return base**node.exponent
            except OverflowError as exc:
                raise DomainError(f"Overflow in power: {exc}") from exc
        if isinstance(node, Func):
            arg = walk(node.arg)
            if node.name == "log" and arg <= 0.0:
                raise DomainError(f"log of non-positive value {arg}")
            if node.name == "sqrt" and arg < 0.0:
                raise DomainError(f"sqrt of negative value {arg}")
            try:
                return _SCALAR_FUNCTIONS[node.name](arg)
            except OverflowError as exc:
                raise DomainError(f"Overflow in {node.name}: {exc}") from exc
        raise TypeError(f"Not an expression node: {type(node).__name__}")

    return walk(e)


def evaluate_array(
    e: Expr,
    values: Mapping[VarId, ArrayLike],
    params: Optional[Mapping[str, float]] = None,
    shape: Optional[tuple] = None,
) -> np.ndarray:
    """
    Evaluate an expression element-wise over numpy arrays.

    Args:
        e: Expression
        values: Arrays (or scalars) for the symbols; arrays must broadcast
        params: Values of named parameters
        shape: Shape of the result when ``e`` is constant

    Returns:
        Array of values

    Raises:
        UnboundSymbol: If a free symbol has no value
        DomainError: If any element leaves the domain of a function
    """
    params = params or {}

    def walk(node: Expr) -> ArrayLike:
        if isinstance(node, Const):
            return float(node.value)
        if isinstance(node, Sym):
            return np.asarray(_lookup(node.var, values, params), dtype=float)
        if isinstance(node, Add):
            total: ArrayLike = 0.0
            for t in node.terms:
                total = total + walk(t)
            return total
        if isinstance(node, Mul):
            product: ArrayLike = 1.0
            for f in node.factors:
                product = product * walk(f)
            return product
        if isinstance(node, Neg):
            return -walk(node.arg)
        if isinstance(node, Div):
            den = walk(node.den)
            if np.any(np.asarray(den) == 0.0):
                raise DomainError("Division by zero during evaluation")
            return walk(node.num) / den
        if isinstance(node, Pow):
            base = np.asarray(walk(node.base), dtype=float)
            if node.exponent < 0 and np.any(base == 0.0):
                raise DomainError("Zero raised to a negative power")
            return np.power(base, float(node.exponent))
        if isinstance(node, Func):
            arg = np.asarray(walk(node.arg), dtype=float)
            if node.name == "log" and np.any(arg <= 0.0):
                raise DomainError("log of non-positive value on the grid")
            if node.name == "sqrt" and np.any(arg < 0.0):
                raise DomainError("sqrt of negative value on the grid")
            return _ARRAY_FUNCTIONS[node.name](arg)
        raise TypeError(f"Not an expression node: {type(node).__name__}")

    with np.errstate(over="raise", invalid="raise", divide="raise"):
        try:
            result = walk(e)
        except FloatingPointError as exc:
            raise DomainError(f"Floating-point error during evaluation: {exc}") from exc

    result = np.asarray(result, dtype=float)
    if shape is not None and result.shape != tuple(shape):
        result = np.broadcast_to(result, shape).copy()
    return result


__all__ = ["evaluate", "evaluate_array"]
