"""
Expression Printer

Renders expressions in the parser's grammar, so that printed output parses
back to a symbolic-equal expression.
"""

from fractions import Fraction

from .nodes import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sym

# Binding strength: sums < products/quotients < unary minus < powers < atoms
_SUM, _PRODUCT, _UNARY, _POWER, _ATOM = range(5)


def _const_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _precedence(e: Expr) -> int:
    if isinstance(e, Const):
        if e.value < 0:
            return _UNARY
        return _ATOM if e.value.denominator == 1 else _PRODUCT
    if isinstance(e, (Sym, Func)):
        return _ATOM
    if isinstance(e, Pow):
        return _POWER
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Mul):
        first = e.factors[0]
        if isinstance(first, Const) and first.value < 0:
            return _UNARY
        return _PRODUCT
    if isinstance(e, Div):
        return _PRODUCT
    return _SUM


def _wrap(e: Expr, minimum: int) -> str:
    text = to_string(e)
    return f"({text})" if _precedence(e) < minimum else text


def _negated(e: Expr):
    """Return the positive counterpart of a visibly negative term, else None."""
    if isinstance(e, Neg):
        return e.arg
    if isinstance(e, Const) and e.value < 0:
        return Const(-e.value)
    if isinstance(e, Mul):
        first = e.factors[0]
        if isinstance(first, Const) and first.value < 0:
            if first.value == -1:
                rest = e.factors[1:]
                return rest[0] if len(rest) == 1 else Mul(rest)
            return Mul((Const(-first.value),) + e.factors[1:])
    return None


def to_string(e: Expr) -> str:
    """
    Print an expression in the expression grammar.

    Args:
        e: Expression

    Returns:
        Text accepted by :func:`ksymplectic.expr.parse`
    """
    if isinstance(e, Const):
        return _const_text(e.value)
    if isinstance(e, Sym):
        return e.var.name
    if isinstance(e, Func):
        return f"{e.name}({to_string(e.arg)})"
    if isinstance(e, Add):
        parts = [to_string(e.terms[0])]
        for term in e.terms[1:]:
            positive = _negated(term)
            if positive is None:
                parts.append(f" + {_wrap(term, _PRODUCT)}")
            else:
                parts.append(f" - {_wrap(positive, _PRODUCT)}")
        return "".join(parts)
    if isinstance(e, Neg):
        return f"-{_wrap(e.arg, _PRODUCT)}"
    if isinstance(e, Mul):
        positive = _negated(e)
        if positive is not None:
            return f"-{_wrap(positive, _PRODUCT)}"
        return "*".join(_wrap(f, _UNARY) for f in e.factors)
    if isinstance(e, Div):
        return f"{_wrap(e.num, _PRODUCT)}/{_wrap(e.den, _POWER)}"
    if isinstance(e, Pow):
        base = _wrap(e.base, _ATOM)
        if e.exponent < 0:
            return f"{base}^(-{-e.exponent})"
        return f"{base}^{e.exponent}"
    raise TypeError(f"Not an expression node: {type(e).__name__}")


__all__ = ["to_string"]
