"""
Lagrangian Module

Objects derived from a Lagrangian L on T^1_kQ including:
- The energy function E_L
- Poincare-Cartan 1-forms theta^a_L and 2-forms omega^a_L in block form
- The velocity Hessian and the regularity verdict
- The geometric Euler-Lagrange residual of a k-vector field
"""

from .forms import (
    SemiBasicOneForm,
    TwoForm,
    cartan_one_forms,
    cartan_two_forms,
    contract_two_form,
    geometric_el_residual,
)
from .hessian import HessianBlocks, RegularityReport, determinant, hessian, is_regular
from .lagrangian import Lagrangian, energy

__all__ = [
    # lagrangian exports
    "Lagrangian",
    "energy",
    # forms exports
    "SemiBasicOneForm",
    "TwoForm",
    "cartan_one_forms",
    "cartan_two_forms",
    "contract_two_form",
    "geometric_el_residual",
    # hessian exports
    "HessianBlocks",
    "RegularityReport",
    "hessian",
    "is_regular",
    "determinant",
]
