"""
Expression Parser

Recursive-descent parser for the expression grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' exponent)?
    exponent := int | '-' int | '(' '-'? int ')'
    atom   := number | ident | func '(' expr ')' | '(' expr ')'

Unary minus binds looser than ``^`` so ``-v1_1^2`` is ``-(v1_1^2)``.
Identifiers are resolved against a chart: ``q{i}``, ``v{i}_{a}``, declared
parameters and, when formal symbols are allowed, ``t{a}`` and
``w{i}_{a}_{b}``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Protocol

from ..config.constants import FUNCTION_NAMES
from ..exceptions import ExpressionSyntaxError, UnknownSymbol
from .nodes import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sym, VarId


class SymbolResolver(Protocol):
    def resolve(self, name: str, allow_formal: bool = False) -> Optional[VarId]:
        ...


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?|\.\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\*\*|[-+*/^(),]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # number, ident, op, end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split expression text into tokens."""
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionSyntaxError(text, start, "a number, identifier or operator")
        kind = match.lastgroup or "op"
        value = match.group(kind)
        start = match.start(kind)
        if value == "**":
            value = "^"
        tokens.append(Token(kind, value, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    """Parser over one expression string."""

    def __init__(self, text: str, chart: SymbolResolver, allow_formal: bool = False):
        self.text = text
        self.chart = chart
        self.allow_formal = allow_formal
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.index += 1
            return True
        return False

    def _expect(self, op: str) -> None:
        if not self._accept(op):
            raise ExpressionSyntaxError(self.text, self.current.position, f"'{op}'")

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise ExpressionSyntaxError(self.text, 0, "an expression")
        result = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(
                self.text, self.current.position, "an operator or end of input"
            )
        return result

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            term = self.term()
            terms.append(term if op == "+" else Neg(term))
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self) -> Expr:
        factors = [self.unary()]
        while self.current.kind == "op" and self.current.text in "*/":
            op = self._advance().text
            right = self.unary()
            if op == "*":
                factors.append(right)
            else:
                left = factors[0] if len(factors) == 1 else Mul(tuple(factors))
                factors = [Div(left, right)]
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def unary(self) -> Expr:
        if self._accept("-"):
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        base = self.atom()
        if self._accept("^"):
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        parenthesized = self._accept("(")
        sign = -1 if self._accept("-") else 1
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise ExpressionSyntaxError(self.text, token.position, "an integer exponent")
        self._advance()
        if parenthesized:
            self._expect(")")
        return sign * int(token.text)

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Const(Fraction(token.text))
        if token.kind == "ident":
            self._advance()
            if token.text in FUNCTION_NAMES:
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Func(token.text, arg)
            var = self.chart.resolve(token.text, self.allow_formal)
            if var is None:
                raise UnknownSymbol(token.text, token.position)
            return Sym(var)
        if self._accept("("):
            inner = self.expr()
            self._expect(")")
            return inner
        raise ExpressionSyntaxError(
            self.text, token.position, "a number, identifier, function or '('"
        )


def parse(text: str, chart: SymbolResolver, allow_formal: bool = False) -> Expr:
    """
    Parse expression text against a chart.

    Args:
        text: Expression text
        chart: Chart resolving identifiers to symbols
        allow_formal: Accept formal ``t`` and ``w`` symbols

    Returns:
        Parse tree (not canonicalized)

    Raises:
        ExpressionSyntaxError: On malformed input, with position and expected token
        UnknownSymbol: On identifiers the chart does not declare
    """
    return Parser(text, chart, allow_formal).parse()


__all__ = ["parse", "tokenize", "Parser", "Token", "SymbolResolver"]
