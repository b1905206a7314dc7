"""
Toolkit Exceptions

Error types raised across the toolkit, including:
- Expression errors (syntax, unknown or unbound symbols, domain errors)
- Geometry and Lagrangian precondition failures
- Symmetry derivation failures (non-Cartan fields, potential reconstruction)
- Numerical solver failures (CFL bound, relaxation non-convergence)
- Input errors (configuration, invalid sections, unsupported operators, usage, unknown names)
"""

from typing import Any, List, Optional


class KSymplecticError(Exception):
    """Base class for every error raised by the toolkit."""


class ExpressionSyntaxError(KSymplecticError, ValueError):
    """Malformed expression text."""

    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        found = text[position : position + 10] or "end of input"
        super().__init__(
            f"Syntax error at position {position}: expected {expected}, "
            f"found {found!r}"
        )


class UnknownSymbol(KSymplecticError, ValueError):
    """Identifier not declared by the chart."""

    def __init__(self, name: str, position: Optional[int] = None):
        self.name = name
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"Unknown symbol '{name}'{where}")


class DivisionByZeroConstant(KSymplecticError, ZeroDivisionError):
    """A denominator folded to the constant zero."""


class UnboundSymbol(KSymplecticError, KeyError):
    """A free symbol has no value during evaluation."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"No value assigned to symbol '{name}'")

    def __str__(self) -> str:
        return self.args[0]


class DomainError(KSymplecticError, ValueError):
    """Evaluation outside the domain of an elementary function."""


class InvalidDimension(KSymplecticError, ValueError):
    """Chart dimensions or directions out of range."""


class NameClash(KSymplecticError, ValueError):
    """Parameter name colliding with a coordinate, function or another parameter."""


class NotBasic(KSymplecticError, ValueError):
    """Vector field is not a field on the base manifold."""


class MissingCoefficient(KSymplecticError, ValueError):
    """SOPDE coefficient table is incomplete."""

    def __init__(self, missing: List[Any]):
        self.missing = missing
        super().__init__(f"Missing SOPDE coefficients for (i, a, b) = {missing}")


class NotNewtonoid(KSymplecticError, ValueError):
    """Vector field is not Newtonoid for the given SOPDE."""


class NotCartan(KSymplecticError, ValueError):
    """Vector field is not a Cartan symmetry of the Lagrangian."""


class PotentialReconstructionFailed(KSymplecticError):
    """Closed 1-forms whose coefficients fall outside the integrable class."""

    def __init__(self, message: str, forms: Optional[List[Any]] = None):
        self.forms = forms or []
        super().__init__(message)


class SingularLagrangian(KSymplecticError, ValueError):
    """Operation requires a Lagrangian that is not singular."""


class CFLViolation(KSymplecticError, ValueError):
    """Explicit scheme step sizes violate the stability bound."""


class NonConvergence(KSymplecticError, RuntimeError):
    """Relaxation did not reach the residual target within the iteration cap."""

    def __init__(self, message: str, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(message)


class ConfigError(KSymplecticError, ValueError):
    """Invalid configuration file or setting."""


class InvalidSection(KSymplecticError, ValueError):
    """Map t -> phi(t) or sampled arrays that do not fit the chart and grid."""


class UnsupportedOperator(KSymplecticError, ValueError):
    """Euler-Lagrange operator outside the class the finite-difference solvers handle."""


class UsageError(KSymplecticError, ValueError):
    """Invalid command-line options or option values."""


class UnknownName(KSymplecticError, KeyError):
    """Lookup of a named entry that does not exist."""

    def __str__(self) -> str:
        return self.args[0]


class ProblemFileError(KSymplecticError, ValueError):
    """Invalid problem file."""

    def __init__(self, message: str, source: str = "<string>", line: int = 0):
        self.source = source
        self.line = line
        location = f"{source}:{line}: " if line else f"{source}: "
        super().__init__(f"{location}{message}")


__all__ = [
    "KSymplecticError",
    "ExpressionSyntaxError",
    "UnknownSymbol",
    "DivisionByZeroConstant",
    "UnboundSymbol",
    "DomainError",
    "InvalidDimension",
    "NameClash",
    "NotBasic",
    "MissingCoefficient",
    "NotNewtonoid",
    "NotCartan",
    "PotentialReconstructionFailed",
    "SingularLagrangian",
    "CFLViolation",
    "NonConvergence",
    "ConfigError",
    "InvalidSection",
    "UnsupportedOperator",
    "UsageError",
    "UnknownName",
    "ProblemFileError",
]
