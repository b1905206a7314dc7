"""
Toolkit Constants

This module defines the fixed vocabulary shared by every module of the
k-symplectic toolkit: symbol kinds, verdicts and grades, elementary function
names and the default numerical tolerances.
"""

from enum import Enum
from typing import Dict, FrozenSet, Tuple


class VarKind(Enum):
    """Kinds of symbols appearing in expressions, in canonical sort order."""

    PARAMETER = 0
    BASE = 1  # q^i
    VELOCITY = 2  # v^i_a
    TIME = 3  # t^a, independent variables of sections
    JET = 4  # w^i_ab, symmetric second-order jet symbols


class Grade(Enum):
    """How a verdict was reached."""

    SYMBOLIC = "symbolic"
    NUMERIC = "numeric"


class Equality(Enum):
    """Outcome of a symbolic equality test."""

    SYMBOLIC_EQUAL = "symbolic-equal"
    NUMERIC_EQUAL = "numeric-equal"
    NOT_EQUAL = "not-equal"


class Regularity(Enum):
    """Regularity verdict for a Lagrangian."""

    REGULAR = "regular"
    SINGULAR = "singular"
    UNDECIDED = "undecided"


class SolutionKind(Enum):
    """Verdict of the generating-field linear solve."""

    UNIQUE = "Unique"
    FAMILY = "Family"
    INCONSISTENT = "Inconsistent"


class Scheme(Enum):
    """Finite-difference schemes for the catalog PDEs."""

    LEAPFROG = "leapfrog"
    RELAXATION = "relaxation"


# Elementary functions accepted by the grammar
FUNCTION_NAMES: FrozenSet[str] = frozenset({"sqrt", "sin", "cos", "exp", "log"})

# Names that can never be parameters
RESERVED_NAMES: FrozenSet[str] = FUNCTION_NAMES | frozenset({"t", "w", "q", "v"})

# Regular expressions of coordinate-like identifiers
COORDINATE_PATTERNS: Dict[VarKind, str] = {
    VarKind.BASE: r"q(\d+)",
    VarKind.VELOCITY: r"v(\d+)_(\d+)",
    VarKind.TIME: r"t(\d+)",
    VarKind.JET: r"w(\d+)_(\d+)_(\d+)",
}

# Symbolic equality fallback
FALLBACK_SEED: int = 20140301
FALLBACK_SAMPLES: int = 12
SAMPLE_BOX: Tuple[float, float] = (0.1, 1.1)
NUMERIC_RTOL: float = 1e-9

# Evaluation and regularity
EVALUATION_RTOL: float = 1e-12
DETERMINANT_TOLERANCE: float = 1e-10

# Numerical verification
MIN_GRID_NODES: int = 5
INTERIOR_WIDTH: int = 1
RELAXATION_TOLERANCE: float = 1e-8
RELAXATION_MAX_ITERATIONS: int = 20000
CONVERGENCE_RATIO: float = 3.5
# Relative residual accepted for exact and finite-difference prolongations
EXACT_TOLERANCE: float = 1e-8
FD_TOLERANCE: float = 1e-2

# Command-line exit codes
EXIT_OK: int = 0
EXIT_FAILURE: int = 1
EXIT_USAGE: int = 2
