"""
Currents

Candidate conservation laws f = (f^1, ..., f^k) and their conservation
check along a SOPDE.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from ..config.settings import Config
from ..expr.nodes import Add, Expr
from ..expr.printer import to_string
from ..expr.simplify import simplify
from ..geometry.chart import Chart
from ..geometry.fields import to_component
from ..sopde.sopde import Sopde
from ..utils.checks import CheckResult, check_zero
from ..utils.validation import validate_same_chart


@dataclass(frozen=True)
class CurrentTuple:
    """
    A k-tuple of functions f^a on T^1_kQ.

    Attributes:
        chart: Chart
        components: f^1, ..., f^k
    """

    chart: Chart
    components: Tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.chart.k:
            raise ValueError(
                f"A current needs {self.chart.k} components, got {len(self.components)}"
            )
        object.__setattr__(self, "components", tuple(simplify(c) for c in self.components))

    @classmethod
    def build(cls, chart: Chart, components: Sequence[Any]) -> "CurrentTuple":
        """Current from expressions, numbers or expression text."""
        return cls(chart, tuple(to_component(chart, c) for c in components))

    def __getitem__(self, alpha: int) -> Expr:
        """f^a for 1-based ``alpha``."""
        if not 1 <= alpha <= self.chart.k:
            raise IndexError(f"Direction must be between 1 and {self.chart.k}, got {alpha}")
        return self.components[alpha - 1]

    def __iter__(self) -> Iterator[Expr]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def equals(self, other: "CurrentTuple", config: Optional[Config] = None) -> CheckResult:
        return check_zero(
            (
                (f"f^{a}", simplify(mine - theirs))
                for a, (mine, theirs) in enumerate(zip(self, other), start=1)
            ),
            config,
        )

    def to_list(self) -> List[str]:
        return [to_string(c) for c in self.components]

    def to_dict(self) -> Dict[str, str]:
        return {f"f^{a}": text for a, text in enumerate(self.to_list(), start=1)}

    def __str__(self) -> str:
        return ", ".join(f"{key} = {value}" for key, value in self.to_dict().items())


def sopde_divergence(f: CurrentTuple, xi: Sopde) -> Expr:
    """The function xi_a(f^a) summed over a."""
    validate_same_chart(f, xi)
    terms = [xi.apply(a, f[a]) for a in range(1, f.chart.k + 1)]
    return simplify(Add(tuple(terms)))


def conservation_check_sopde(
    f: CurrentTuple, xi: Sopde, config: Optional[Config] = None
) -> CheckResult:
    """
    Whether xi_a(f^a) = 0.

    Integrability of ``xi`` and its membership in X^k_L are not checked here.
    """
    return check_zero([("xi_a(f^a)", sopde_divergence(f, xi))], config)


__all__ = ["CurrentTuple", "sopde_divergence", "conservation_check_sopde"]
