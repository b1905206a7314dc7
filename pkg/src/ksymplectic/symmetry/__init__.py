"""
Symmetry Module

Symmetries and conservation laws of k-symplectic Lagrangian systems including:
- Cartan, dynamical and Newtonoid predicates
- The Newtonoid projector and star product
- Noether currents with reconstructed potentials
- Converse analysis: generating fields, current classification and the
  Newtonoid criterion over all SOPDEs
"""

from .converse import (
    CurrentClassification,
    GeneratorSolution,
    MMReport,
    classify_current,
    energy_flux_identity,
    generating_field,
    marmo_mukunda_check,
)
from .currents import CurrentTuple, conservation_check_sopde, sopde_divergence
from .newtonoid import project_newtonoid, star_product
from .noether import NoetherResult, complete_lift_currents, noether_current, radial_potential
from .predicates import cartan_residuals, is_cartan_symmetry, is_dynamical_symmetry, is_newtonoid

__all__ = [
    # currents exports
    "CurrentTuple",
    "sopde_divergence",
    "conservation_check_sopde",
    # predicates exports
    "cartan_residuals",
    "is_cartan_symmetry",
    "is_dynamical_symmetry",
    "is_newtonoid",
    # newtonoid exports
    "project_newtonoid",
    "star_product",
    # noether exports
    "NoetherResult",
    "radial_potential",
    "noether_current",
    "complete_lift_currents",
    # converse exports
    "GeneratorSolution",
    "generating_field",
    "energy_flux_identity",
    "CurrentClassification",
    "classify_current",
    "MMReport",
    "marmo_mukunda_check",
]
