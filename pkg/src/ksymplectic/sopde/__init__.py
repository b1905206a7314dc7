"""
SOPDE Module

Second-order partial differential equations on T^1_kQ including:
- Construction from coefficient tables, the free and formal SOPDEs
- SOPDE and Liouville predicates for k-vector fields
- Membership in X^k_L and the Euler-Lagrange operator
- Integrability reports
"""

from .euler_lagrange import el_operator, hessian_form_residual, in_xkl, xkl_residual
from .integrability import IntegrabilityReport, integrability_report
from .sopde import (
    Sopde,
    formal_sopde,
    is_sopde,
    make_sopde,
    satisfies_liouville_per_direction,
    satisfies_liouville_sum,
    zero_sopde,
)

__all__ = [
    # sopde exports
    "Sopde",
    "make_sopde",
    "zero_sopde",
    "formal_sopde",
    "is_sopde",
    "satisfies_liouville_sum",
    "satisfies_liouville_per_direction",
    # euler_lagrange exports
    "xkl_residual",
    "hessian_form_residual",
    "in_xkl",
    "el_operator",
    # integrability exports
    "IntegrabilityReport",
    "integrability_report",
]
