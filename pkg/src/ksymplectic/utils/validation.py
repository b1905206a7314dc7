"""
Validation Utilities

Provides functions for validating inputs such as coordinate indices,
directions, chart compatibility and grid shapes.
"""

from typing import Any, Sequence

from ..exceptions import InvalidDimension


def validate_dimension(value: Any, label: str = "dimension") -> bool:
    """
    Validate a chart dimension.

    Args:
        value: Candidate dimension
        label: Name used in the error message

    Returns:
        True if valid, raises InvalidDimension otherwise.
    """
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InvalidDimension(f"{label} must be a positive integer, got {value!r}")
    return True


def validate_index(i: Any, n: int) -> bool:
    """
    Validate a base index.

    Args:
        i: Index (1-based)
        n: Dimension of the base

    Returns:
        True if valid, raises InvalidDimension otherwise.
    """
    if isinstance(i, bool) or not isinstance(i, int) or not (1 <= i <= n):
        raise InvalidDimension(f"Index must be between 1 and {n}, got {i!r}")
    return True


def validate_direction(alpha: Any, k: int) -> bool:
    """
    Validate a direction.

    Args:
        alpha: Direction (1-based)
        k: Number of directions

    Returns:
        True if valid, raises InvalidDimension otherwise.
    """
    if isinstance(alpha, bool) or not isinstance(alpha, int) or not (1 <= alpha <= k):
        raise InvalidDimension(f"Direction must be between 1 and {k}, got {alpha!r}")
    return True


def validate_same_chart(*objects: Any) -> bool:
    """
    Validate that objects carrying a ``chart`` attribute share one chart.

    Returns:
        True if valid, raises ValueError otherwise.
    """
    charts = [obj.chart for obj in objects]
    for chart in charts[1:]:
        if chart != charts[0]:
            raise ValueError(f"Objects live on different charts: {charts[0]} and {chart}")
    return True


def validate_grid_counts(counts: Sequence[int], minimum: int) -> bool:
    """
    Validate node counts of a grid.

    Args:
        counts: Node count per direction
        minimum: Minimum count per direction

    Returns:
        True if valid, raises ValueError otherwise.
    """
    for alpha, count in enumerate(counts, start=1):
        if count < minimum:
            raise ValueError(
                f"Grid direction {alpha} must have at least {minimum} nodes, got {count}"
            )
    return True


__all__ = [
    "validate_dimension",
    "validate_index",
    "validate_direction",
    "validate_same_chart",
    "validate_grid_counts",
]
