"""
Integrability of SOPDEs

Checks the symmetry xi^i_ab = xi^i_ba and closure
xi_a(xi^i_bc) = xi_b(xi^i_ac) conditions, cross-validated against the
vanishing of all brackets [xi_a, xi_b].
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..config.settings import Config
from ..expr.simplify import simplify
from ..geometry.operators import lie_bracket
from ..utils.checks import CheckResult, all_hold, check_zero
from .sopde import Sopde

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegrabilityReport:
    """Outcome of the integrability checks of a SOPDE."""

    symmetric: CheckResult
    closure: CheckResult
    brackets: CheckResult

    @property
    def brackets_vanish(self) -> bool:
        return self.brackets.holds

    @property
    def integrable(self) -> bool:
        return self.symmetric.holds and self.closure.holds

    @property
    def consistent(self) -> bool:
        """The bracket test agrees with the two condition families."""
        return self.brackets_vanish == self.integrable

    def __bool__(self) -> bool:
        return self.integrable

    def to_dict(self) -> Dict[str, Any]:
        return {
            "symmetric": self.symmetric.to_dict(),
            "closure": self.closure.to_dict(),
            "brackets_vanish": self.brackets.to_dict(),
        }


def integrability_report(xi: Sopde, config: Optional[Config] = None) -> IntegrabilityReport:
    """
    Check both integrability condition families identically (not on-shell).

    Args:
        xi: SOPDE
        config: Configuration for zero tests

    Returns:
        IntegrabilityReport with witnesses labelled (i,a,b) and (i,a,b,c)
    """
    chart = xi.chart
    n, k = chart.n, chart.k

    symmetric = check_zero(
        (
            (f"({i},{a},{b})", simplify(xi.coefficient(i, a, b) - xi.coefficient(i, b, a)))
            for i in range(1, n + 1)
            for a in range(1, k + 1)
            for b in range(a + 1, k + 1)
        ),
        config,
    )

    closure = check_zero(
        (
            (
                f"({i},{a},{b},{c})",
                simplify(
                    xi.apply(a, xi.coefficient(i, b, c)) - xi.apply(b, xi.coefficient(i, a, c))
                ),
            )
            for i in range(1, n + 1)
            for a in range(1, k + 1)
            for b in range(a + 1, k + 1)
            for c in range(1, k + 1)
        ),
        config,
    )

    brackets = all_hold(
        lie_bracket(xi.field(a), xi.field(b)).is_zero(config)
        for a in range(1, k + 1)
        for b in range(a + 1, k + 1)
    )

    report = IntegrabilityReport(symmetric, closure, brackets)
    if not report.consistent:
        logger.warning(
            "Bracket test (%s) disagrees with symmetry/closure (%s)",
            report.brackets_vanish,
            report.integrable,
        )
    return report


__all__ = ["IntegrabilityReport", "integrability_report"]
