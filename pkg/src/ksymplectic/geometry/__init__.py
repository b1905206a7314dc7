"""
Geometry Module

The chart on T^1_kQ and its canonical geometric objects including:
- Chart construction and symbol lookup
- Vector fields, k-vector fields and general 1-forms
- The k-tangent structure J^a and the Liouville field
- Lie brackets, complete lifts and vertical lifts
"""

from .chart import Chart, new_chart
from .fields import KVectorField, VectorField
from .forms import OneForm, exterior_derivative
from .operators import (
    apply_J,
    complete_lift,
    coordinate_field,
    lie_bracket,
    liouville,
    sum_J,
    vertical_lift,
)

__all__ = [
    # chart exports
    "Chart",
    "new_chart",
    # field and form exports
    "VectorField",
    "KVectorField",
    "OneForm",
    "exterior_derivative",
    # operator exports
    "coordinate_field",
    "liouville",
    "apply_J",
    "sum_J",
    "lie_bracket",
    "complete_lift",
    "vertical_lift",
]
