"""
Canonical Simplification

Maps any expression tree to its canonical form: an expanded polynomial, or
a single ``Div`` of expanded polynomials, over canonical atoms.

Canonical form:
- Add/Mul children flattened and sorted by :func:`node_key`
- no zero summands, no unit factors, integer powers other than 0 and 1
- numeric subtrees folded to one rational constant (exactly)
- powers of ``sqrt(u)`` above one reduced in the numerator when ``u`` is a
  polynomial
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, List, Optional

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
    node_key,
)
from .rational import ONE_POLY, Monomial, Poly, Rational

logger = logging.getLogger(__name__)

# Bound on radical-reduction passes; each pass strictly lowers sqrt exponents.
_MAX_RADICAL_PASSES = 16


def _fold_function(name: str, arg: Expr) -> Optional[Expr]:
    """Exact value of a function at a constant argument, if rational."""
    if not isinstance(arg, Const):
        return None
    value = arg.value
    if name == "sqrt" and value >= 0:
        root_n, root_d = isqrt(value.numerator), isqrt(value.denominator)
        if root_n * root_n == value.numerator and root_d * root_d == value.denominator:
            return Const(Fraction(root_n, root_d))
        return None
    if value == 0 and name in ("sin",):
        return ZERO
    if value == 0 and name in ("cos", "exp"):
        return ONE
    if value == 1 and name == "log":
        return ZERO
    return None


@lru_cache(maxsize=1 << 15)
def to_rational(e: Expr) -> Rational:
    """Rational-function form of an expression (no radical reduction)."""
    if isinstance(e, Const):
        return Rational.constant(e.value)
    if isinstance(e, Sym):
        return Rational(Poly.atom(e))
    if isinstance(e, Add):
        total = Rational.constant(Fraction(0))
        for term in e.terms:
            total = total + to_rational(term)
        return total
    if isinstance(e, Mul):
        product = Rational.constant(Fraction(1))
        for factor in e.factors:
            product = product * to_rational(factor)
            if product.is_zero():
                break
        return product
    if isinstance(e, Neg):
        return -to_rational(e.arg)
    if isinstance(e, Div):
        return to_rational(e.num) / to_rational(e.den)
    if isinstance(e, Pow):
        return to_rational(e.base) ** e.exponent
    if isinstance(e, Func):
        arg = simplify(e.arg)
        folded = _fold_function(e.name, arg)
        if folded is not None:
            return to_rational(folded)
        return Rational(Poly.atom(Func(e.name, arg)))
    raise TypeError(f"Not an expression node: {type(e).__name__}")


def _radicand(atom: Expr) -> Optional[Poly]:
    if isinstance(atom, Func) and atom.name == "sqrt":
        inner = to_rational(atom.arg)
        if inner.is_polynomial():
            return inner.num
    return None


def reduce_radicals(poly: Poly) -> Poly:
    """Rewrite ``sqrt(u)^e`` (e >= 2, u polynomial) as ``u^(e//2) sqrt(u)^(e%2)``."""
    for _ in range(_MAX_RADICAL_PASSES):
        changed = False
        result = Poly()
        for mono, coeff in poly.terms.items():
            if not any(e >= 2 and _radicand(a) is not None for a, e in mono):
                result = result + Poly({mono: coeff})
                continue
            changed = True
            term = Poly.constant(coeff)
            for atom, e in mono:
                radicand = _radicand(atom) if e >= 2 else None
                if radicand is None:
                    term = term * Poly.atom(atom, e)
                else:
                    term = term * radicand ** (e // 2)
                    if e % 2:
                        term = term * Poly.atom(atom)
            result = result + term
        poly = result
        if not changed:
            return poly
    logger.debug("Radical reduction stopped after %d passes", _MAX_RADICAL_PASSES)
    return poly


def _term_expr(mono: Monomial, coeff: Fraction) -> Expr:
    factors: List[Expr] = [atom if e == 1 else Pow(atom, e) for atom, e in mono]
    if not factors:
        return Const(coeff)
    if coeff != 1:
        factors.insert(0, Const(coeff))
    if len(factors) == 1:
        return factors[0]
    return Mul(tuple(factors))


def poly_to_expr(poly: Poly) -> Expr:
    """Canonical expression of a polynomial."""
    if poly.is_zero():
        return ZERO
    terms = sorted((_term_expr(m, c) for m, c in poly.terms.items()), key=node_key)
    if len(terms) == 1:
        return terms[0]
    return Add(tuple(terms))


def from_rational(r: Rational) -> Expr:
    """Canonical expression of a rational function."""
    num = poly_to_expr(r.num)
    if r.den == ONE_POLY:
        return num
    return Div(num, poly_to_expr(r.den))


def canonical_rational(e: Expr) -> Rational:
    """Rational form with radicals reduced in the numerator."""
    r = to_rational(e)
    if r.is_zero():
        return r
    num = reduce_radicals(r.num)
    if num is r.num or num == r.num:
        return r
    return Rational(num, r.den)


@lru_cache(maxsize=1 << 15)
def simplify(e: Expr) -> Expr:
    """
    Canonical form of an expression.

    Args:
        e: Expression tree

    Returns:
        Canonical expression; ``simplify`` is idempotent

    Raises:
        DivisionByZeroConstant: If a denominator folds to zero
    """
    return from_rational(canonical_rational(e))


def is_constant(e: Expr) -> bool:
    return isinstance(simplify(e), Const)


def collect_atoms(e: Expr) -> Dict[Expr, None]:
    """Atoms (symbols and function nodes) of the canonical form, in order."""
    r = to_rational(e)
    return dict.fromkeys(r.atoms())


__all__ = [
    "simplify",
    "to_rational",
    "from_rational",
    "canonical_rational",
    "poly_to_expr",
    "reduce_radicals",
    "is_constant",
    "collect_atoms",
]
