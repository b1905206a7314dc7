"""
Grids

Rectangular grids over the parameter domain U of a section, one axis per
direction t^a. Node arrays use numpy ``indexing="ij"`` so axis a-1 of every
grid array runs along t^a; flattening is row-major (last direction fastest).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import MIN_GRID_NODES
from ..config.settings import Config, get_global_config
from ..utils.validation import validate_grid_counts


@dataclass(frozen=True)
class GridSpec:
    """
    Uniform grid on a box in R^k.

    Attributes:
        extents: (t_min, t_max) per direction
        counts: Number of nodes per direction, endpoints included
    """

    extents: Tuple[Tuple[float, float], ...]
    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.extents) != len(self.counts):
            raise ValueError(
                f"Grid needs one extent per direction, got {len(self.extents)} extents "
                f"and {len(self.counts)} counts"
            )
        for alpha, (low, high) in enumerate(self.extents, start=1):
            if not high > low:
                raise ValueError(
                    f"Extent of direction {alpha} must satisfy min < max, got [{low}, {high}]"
                )
        validate_grid_counts(self.counts, MIN_GRID_NODES)

    @classmethod
    def uniform(
        cls,
        k: int,
        step: float,
        extent: Tuple[float, float] = (0.0, 1.0),
        config: Optional[Config] = None,
    ) -> "GridSpec":
        """Same extent and step in every direction."""
        return cls.from_steps([extent] * k, [step] * k, config)

    @classmethod
    def from_steps(
        cls,
        extents: Sequence[Tuple[float, float]],
        steps: Sequence[float],
        config: Optional[Config] = None,
    ) -> "GridSpec":
        """
        Grid whose nodes are spaced by (approximately) the requested steps.

        The count per direction is rounded so the extent is covered exactly;
        the realised steps are available as ``steps``.

        Raises:
            ValueError: If a step is not positive or a direction gets fewer
                than the configured minimum number of nodes
        """
        config = config or get_global_config()
        counts = []
        for alpha, ((low, high), h) in enumerate(zip(extents, steps), start=1):
            if h <= 0:
                raise ValueError(f"Step of direction {alpha} must be positive, got {h}")
            counts.append(int(round((high - low) / h)) + 1)
        validate_grid_counts(counts, config.get("numverify.min_nodes"))
        return cls(tuple((float(lo), float(hi)) for lo, hi in extents), tuple(counts))

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.counts)

    @property
    def size(self) -> int:
        return int(np.prod(self.counts))

    @property
    def steps(self) -> Tuple[float, ...]:
        return tuple((hi - lo) / (n - 1) for (lo, hi), n in zip(self.extents, self.counts))

    def axes(self) -> List[np.ndarray]:
        return [np.linspace(lo, hi, n) for (lo, hi), n in zip(self.extents, self.counts)]

    def mesh(self) -> List[np.ndarray]:
        """Coordinate arrays t^1..t^k over the full grid."""
        return np.meshgrid(*self.axes(), indexing="ij")

    def interior(self, width: int = 1) -> Tuple[slice, ...]:
        """Index of the nodes at distance >= ``width`` from the boundary."""
        if any(n <= 2 * width for n in self.counts):
            raise ValueError(f"Grid {self.counts} has no nodes at depth {width}")
        return tuple(slice(width, n - width) for n in self.counts)

    def refined(self) -> "GridSpec":
        """The grid with every step halved."""
        return GridSpec(self.extents, tuple(2 * n - 1 for n in self.counts))

    def __str__(self) -> str:
        parts = [
            f"t{a}=[{lo:g},{hi:g}]/{n}"
            for a, ((lo, hi), n) in enumerate(zip(self.extents, self.counts), start=1)
        ]
        return "grid(" + ", ".join(parts) + ")"


def shifted(u: np.ndarray, offsets: Sequence[int]) -> np.ndarray:
    """
    Array s with s[idx] = u[idx + offsets], NaN where idx + offsets leaves the grid.

    ``offsets`` lists one shift per trailing axis of ``u``.
    """
    out = np.full(u.shape, np.nan)
    lead = u.ndim - len(offsets)
    target = [slice(None)] * lead
    source = [slice(None)] * lead
    for axis_len, d in zip(u.shape[lead:], offsets):
        if d >= 0:
            target.append(slice(0, axis_len - d))
            source.append(slice(d, axis_len))
        else:
            target.append(slice(-d, axis_len))
            source.append(slice(0, axis_len + d))
    out[tuple(target)] = u[tuple(source)]
    return out


def centered_first(u: np.ndarray, axis: int, h: float, k: int) -> np.ndarray:
    """Second-order centered difference along grid axis ``axis`` (0-based)."""
    plus = [0] * k
    minus = [0] * k
    plus[axis], minus[axis] = 1, -1
    return (shifted(u, plus) - shifted(u, minus)) / (2.0 * h)


def centered_second(
    u: np.ndarray, axis_a: int, axis_b: int, h_a: float, h_b: float, k: int
) -> np.ndarray:
    """Second-order centered second difference along axes a and b (0-based)."""
    if axis_a == axis_b:
        plus = [0] * k
        minus = [0] * k
        plus[axis_a], minus[axis_a] = 1, -1
        return (shifted(u, plus) - 2.0 * u + shifted(u, minus)) / (h_a * h_a)
    total = 0.0
    for sa, sb, sign in ((1, 1, 1.0), (1, -1, -1.0), (-1, 1, -1.0), (-1, -1, 1.0)):
        offsets = [0] * k
        offsets[axis_a], offsets[axis_b] = sa, sb
        total = total + sign * shifted(u, offsets)
    return total / (4.0 * h_a * h_b)


__all__ = ["GridSpec", "shifted", "centered_first", "centered_second"]
