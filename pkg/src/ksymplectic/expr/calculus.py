"""
Differentiation, Substitution and Symbol Collection

Implements every partial derivative the toolkit needs (with respect to base,
velocity, time and jet symbols) together with symbol substitution.
"""

from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Mapping, Set

from ..config.constants import VarKind
from .nodes import (
    ONE,
    ZERO,
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Sym,
    VarId,
    as_expr,
    children,
)
from .simplify import simplify


@lru_cache(maxsize=1 << 15)
def _symbols(e: Expr) -> FrozenSet[VarId]:
    if isinstance(e, Sym):
        return frozenset((e.var,))
    found: Set[VarId] = set()
    for child in children(e):
        found |= _symbols(child)
    return frozenset(found)


def free_symbols(e: Expr) -> Set[VarId]:
    """
    Symbols occurring in the canonical form of ``e``.

    Cancelled symbols (``v1_1 - v1_1``) do not occur.
    """
    return set(_symbols(simplify(e)))


def _raw_derivative(e: Expr, x: VarId) -> Expr:
    if x not in _symbols(e):
        return ZERO
    if isinstance(e, Sym):
        return ONE
    if isinstance(e, Add):
        return Add(tuple(_raw_derivative(t, x) for t in e.terms))
    if isinstance(e, Mul):
        terms = []
        for i, factor in enumerate(e.factors):
            if x not in _symbols(factor):
                continue
            rest = e.factors[:i] + (_raw_derivative(factor, x),) + e.factors[i + 1 :]
            terms.append(Mul(rest))
        return Add(tuple(terms)) if len(terms) > 1 else terms[0]
    if isinstance(e, Pow):
        inner = _raw_derivative(e.base, x)
        return Mul((Const(Fraction(e.exponent)), Pow(e.base, e.exponent - 1), inner))
    if isinstance(e, Neg):
        return Neg(_raw_derivative(e.arg, x))
    if isinstance(e, Div):
        du = _raw_derivative(e.num, x)
        dw = _raw_derivative(e.den, x)
        return Div(
            Add((Mul((du, e.den)), Neg(Mul((e.num, dw))))),
            Pow(e.den, 2),
        )
    if isinstance(e, Func):
        inner = _raw_derivative(e.arg, x)
        if e.name == "sqrt":
            return Div(inner, Mul((Const(Fraction(2)), e)))
        if e.name == "sin":
            return Mul((Func("cos", e.arg), inner))
        if e.name == "cos":
            return Neg(Mul((Func("sin", e.arg), inner)))
        if e.name == "exp":
            return Mul((e, inner))
        if e.name == "log":
            return Div(inner, e.arg)
    raise TypeError(f"Cannot differentiate node {type(e).__name__}")


@lru_cache(maxsize=1 << 15)
def _differentiate(e: Expr, x: VarId) -> Expr:
    return simplify(_raw_derivative(simplify(e), x))


def differentiate(e: Expr, x: VarId) -> Expr:
    """
    Exact partial derivative, canonicalized.

    Args:
        e: Expression
        x: Symbol to differentiate with respect to; parameters are constants

    Returns:
        Canonical derivative

    Raises:
        ValueError: If ``x`` is a parameter symbol
    """
    if x.kind is VarKind.PARAMETER:
        raise ValueError(f"Cannot differentiate with respect to parameter '{x.name}'")
    return _differentiate(e, x)


def _raw_substitute(e: Expr, mapping: Mapping[VarId, Expr]) -> Expr:
    if isinstance(e, Sym):
        return mapping.get(e.var, e)
    if isinstance(e, Const):
        return e
    if isinstance(e, Add):
        return Add(tuple(_raw_substitute(t, mapping) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(tuple(_raw_substitute(f, mapping) for f in e.factors))
    if isinstance(e, Pow):
        return Pow(_raw_substitute(e.base, mapping), e.exponent)
    if isinstance(e, Neg):
        return Neg(_raw_substitute(e.arg, mapping))
    if isinstance(e, Div):
        return Div(_raw_substitute(e.num, mapping), _raw_substitute(e.den, mapping))
    if isinstance(e, Func):
        return Func(e.name, _raw_substitute(e.arg, mapping))
    raise TypeError(f"Not an expression node: {type(e).__name__}")


def substitute(e: Expr, mapping: Mapping[VarId, object]) -> Expr:
    """Replace symbols by expressions (or numbers) and canonicalize."""
    exprs = {var: as_expr(value) for var, value in mapping.items()}
    return simplify(_raw_substitute(e, exprs))


__all__ = ["differentiate", "substitute", "free_symbols"]
