"""
Check Results

Graded outcomes of symbolic identity checks. A check collects labelled
residuals, tests each for zero and keeps the first failures as witnesses.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..config.constants import Equality, Grade
from ..config.settings import Config
from ..expr.equality import is_zero
from ..expr.nodes import Expr
from ..expr.printer import to_string


@dataclass(frozen=True)
class Witness:
    """A labelled residual that failed to vanish."""

    label: str
    residual: Expr
    point: Optional[Dict[str, float]] = None

    def __str__(self) -> str:
        return f"{self.label}: {to_string(self.residual)}"


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of an identity check.

    Truthy exactly when the check holds, so predicates keep their boolean
    meaning at call sites.
    """

    holds: bool
    grade: Grade = Grade.SYMBOLIC
    witnesses: Tuple[Witness, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.holds

    @property
    def witness(self) -> Optional[Witness]:
        return self.witnesses[0] if self.witnesses else None

    def combine(self, other: "CheckResult") -> "CheckResult":
        grade = Grade.NUMERIC if Grade.NUMERIC in (self.grade, other.grade) else Grade.SYMBOLIC
        return CheckResult(self.holds and other.holds, grade, self.witnesses + other.witnesses)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "grade": self.grade.value,
            "witnesses": [str(w) for w in self.witnesses],
        }


def check_zero(
    residuals: Iterable[Tuple[str, Expr]],
    config: Optional[Config] = None,
    stop_at_first: bool = False,
) -> CheckResult:
    """
    Check that every labelled residual vanishes.

    Args:
        residuals: (label, expression) pairs
        config: Configuration for the numeric fallback
        stop_at_first: Stop after the first failing residual

    Returns:
        CheckResult, graded numeric if any verdict relied on sampling
    """
    witnesses: List[Witness] = []
    grade = Grade.SYMBOLIC
    for label, residual in residuals:
        result = is_zero(residual, config)
        if result.verdict is Equality.NUMERIC_EQUAL:
            grade = Grade.NUMERIC
        if not result:
            if result.grade is Grade.NUMERIC:
                grade = Grade.NUMERIC
            witnesses.append(Witness(label, result.residual, result.witness))
            if stop_at_first:
                break
    return CheckResult(not witnesses, grade, tuple(witnesses))


def all_hold(results: Iterable[CheckResult]) -> CheckResult:
    """Conjunction of check results."""
    combined = CheckResult(True)
    for result in results:
        combined = combined.combine(result)
    return combined


__all__ = ["Witness", "CheckResult", "check_zero", "all_hold"]
