"""
Numerical Verification Module

Grid-based checks of the symbolic results including:
- Grids and discrete sections with exact or centered-difference prolongation
- Finite-difference solvers (leapfrog, red-black relaxation)
- Euler-Lagrange, divergence, integral-section and contracted residuals
- Convergence studies and tabular section export

The symbolic checks of :mod:`ksymplectic.symmetry` are universal
certificates; the residuals here only confirm them on the sampled solutions.
"""

from .grid import GridSpec, centered_first, centered_second
from .residuals import (
    ConvergenceStudy,
    ResidualReport,
    contracted_sopde_residual,
    convergence_study,
    divergence_residual,
    el_residual,
    integral_section_residual,
)
from .section import DiscreteSection, export_section, fd_prolongation, sample_analytic
from .solver import classify, diagonal_coefficients, solve_fd

__all__ = [
    # grid exports
    "GridSpec",
    "centered_first",
    "centered_second",
    # section exports
    "DiscreteSection",
    "fd_prolongation",
    "sample_analytic",
    "export_section",
    # solver exports
    "diagonal_coefficients",
    "classify",
    "solve_fd",
    # residual exports
    "ResidualReport",
    "el_residual",
    "divergence_residual",
    "integral_section_residual",
    "contracted_sopde_residual",
    "ConvergenceStudy",
    "convergence_study",
]
