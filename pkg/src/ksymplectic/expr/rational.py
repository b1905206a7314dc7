"""
Polynomial and Rational-Function Arithmetic

Exact arithmetic over ``Fraction`` coefficients used by canonicalization,
including:
- Monomials as sorted (atom, exponent) tuples
- Sparse polynomials keyed by monomial
- Rational functions as numerator/denominator pairs with a normalized
  denominator (leading coefficient 1)

Atoms are symbols and elementary-function nodes with canonical arguments.
Quotients are reduced by their common monomial factor and collapse to a
constant when numerator and denominator are proportional. Parameter
symbols never cancel across a quotient, so ``sigma*v1_1/sigma`` keeps its
sigma != 0 condition; only numeric content and coordinate factors cancel.
No general polynomial gcd is taken, so zero testing only needs the numerator.
"""

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Tuple

from ..config.constants import VarKind
from ..exceptions import DivisionByZeroConstant
from .nodes import Expr, Sym, node_key

Monomial = Tuple[Tuple[Expr, int], ...]

UNIT: Monomial = ()


def _sorted_monomial(exps: Dict[Expr, int]) -> Monomial:
    return tuple(sorted(exps.items(), key=lambda item: node_key(item[0])))


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for atom, e in m2:
        exps[atom] = exps.get(atom, 0) + e
    return _sorted_monomial(exps)


def mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1)
    for atom, e in m2:
        exps[atom] = max(exps.get(atom, 0), e)
    return _sorted_monomial(exps)


def mono_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    other = dict(m2)
    exps = {atom: min(e, other[atom]) for atom, e in m1 if atom in other}
    return _sorted_monomial(exps)


def mono_div(m1: Monomial, m2: Monomial) -> Monomial:
    """Exact quotient m1 / m2; m2 must divide m1."""
    exps = dict(m1)
    for atom, e in m2:
        left = exps.get(atom, 0) - e
        if left < 0:
            raise ValueError("Monomial does not divide")
        if left:
            exps[atom] = left
        else:
            exps.pop(atom, None)
    return _sorted_monomial(exps)


def _is_parameter(atom: Expr) -> bool:
    return isinstance(atom, Sym) and atom.var.kind is VarKind.PARAMETER


def mono_without_parameters(m: Monomial) -> Monomial:
    return tuple((atom, e) for atom, e in m if not _is_parameter(atom))


def mono_key(m: Monomial) -> Tuple:
    """Coefficient-independent monomial order (unit monomial first)."""
    return (sum(e for _, e in m), tuple((node_key(a), e) for a, e in m))


class Poly:
    """Sparse polynomial over expression atoms. Treated as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.terms: Dict[Monomial, Fraction] = {
            m: c for m, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def constant(cls, value: Fraction) -> "Poly":
        return cls({UNIT: Fraction(value)})

    @classmethod
    def atom(cls, atom: Expr, exponent: int = 1) -> "Poly":
        return cls({((atom, exponent),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == UNIT for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get(UNIT, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def has_parameters(self) -> bool:
        return any(_is_parameter(atom) for atom in self.atoms())

    def atoms(self) -> Iterator[Expr]:
        seen = set()
        for m in self.terms:
            for atom, _ in m:
                if atom not in seen:
                    seen.add(atom)
                    yield atom

    def content(self) -> Monomial:
        """Greatest monomial dividing every term."""
        monomials = iter(self.terms)
        common = next(monomials, UNIT)
        for m in monomials:
            if not common:
                break
            common = mono_gcd(common, m)
        return common

    def divide_monomial(self, mono: Monomial) -> "Poly":
        return Poly({mono_div(m, mono): c for m, c in self.terms.items()})

    def leading(self) -> Tuple[Monomial, Fraction]:
        m = min(self.terms, key=mono_key)
        return m, self.terms[m]

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Poly(terms)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly()
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Poly(terms)

    def scale(self, factor: Fraction) -> "Poly":
        return Poly({m: c * factor for m, c in self.terms.items()})

    def times_monomial(self, mono: Monomial) -> "Poly":
        return Poly({mono_mul(m, mono): c for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("Polynomial powers must be non-negative")
        result = Poly.constant(Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Poly({self.terms!r})"


ONE_POLY = Poly.constant(Fraction(1))
ZERO_POLY = Poly()


def _proportional(num: Poly, den: Poly) -> Optional[Fraction]:
    """The constant c with num = c*den, if there is one."""
    if len(num.terms) != len(den.terms):
        return None
    ratio: Optional[Fraction] = None
    for m, c in num.terms.items():
        d = den.terms.get(m)
        if d is None:
            return None
        if ratio is None:
            ratio = c / d
        elif c / d != ratio:
            return None
    return ratio


class Rational:
    """Quotient of polynomials with a normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = ONE_POLY):
        if den.is_zero():
            raise DivisionByZeroConstant("Denominator folds to the constant 0")
        if num.is_zero():
            num, den = ZERO_POLY, ONE_POLY
        else:
            common = mono_without_parameters(mono_gcd(num.content(), den.content()))
            if common:
                num, den = num.divide_monomial(common), den.divide_monomial(common)
            ratio = None if den.has_parameters() else _proportional(num, den)
            if ratio is not None:
                num, den = Poly.constant(ratio), ONE_POLY
            _, lead = den.leading()
            if lead != 1:
                inverse = 1 / lead
                num, den = num.scale(inverse), den.scale(inverse)
            if den.is_constant():
                den = ONE_POLY
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, value: Fraction) -> "Rational":
        return cls(Poly.constant(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE_POLY

    def __add__(self, other: "Rational") -> "Rational":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return Rational(self.num + other.num, self.den)
        if self.is_polynomial():
            return Rational(self.num * other.den + other.num, other.den)
        if other.is_polynomial():
            return Rational(self.num + other.num * self.den, self.den)
        if self.den.is_monomial() and other.den.is_monomial():
            (m1, _), (m2, _) = self.den.leading(), other.den.leading()
            lcm = mono_lcm(m1, m2)
            num = self.num.times_monomial(mono_div(lcm, m1)) + other.num.times_monomial(
                mono_div(lcm, m2)
            )
            return Rational(num, Poly({lcm: Fraction(1)}))
        return Rational(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "Rational":
        return Rational(-self.num, self.den)

    def __sub__(self, other: "Rational") -> "Rational":
        return self + (-other)

    def __mul__(self, other: "Rational") -> "Rational":
        if self.is_zero() or other.is_zero():
            return Rational(ZERO_POLY)
        return Rational(self.num * other.num, self.den * other.den)

    def inverse(self) -> "Rational":
        if self.is_zero():
            raise DivisionByZeroConstant("Division by an expression that folds to 0")
        return Rational(self.den, self.num)

    def __truediv__(self, other: "Rational") -> "Rational":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Rational":
        if n == 0:
            return Rational(ONE_POLY)
        if n < 0:
            return self.inverse() ** (-n)
        return Rational(self.num**n, self.den**n)

    def atoms(self) -> Iterable[Expr]:
        yield from self.num.atoms()
        yield from self.den.atoms()

    def __repr__(self) -> str:
        return f"Rational({self.num!r}, {self.den!r})"


__all__ = [
    "Monomial",
    "Poly",
    "Rational",
    "ONE_POLY",
    "ZERO_POLY",
    "mono_mul",
    "mono_lcm",
    "mono_div",
    "mono_key",
    "mono_without_parameters",
]
