"""
fraclap: Dirichlet eigenvalues of the fractional Laplacian on the unit ball.

Spectral Galerkin solver for the radial sub-problems, assembly of the full
ball spectrum, pointwise eigenfunctions, and numerical checks of the
polarization inequalities used to locate the second eigenvalue.
"""
from .specfun import QuadratureRule, gamma, gauss_jacobi, jacobi_eval, jacobi_norm, log_gamma
from .radial import (
    RadialEigenpair, SpectralParams, assemble, dyda_multiplier, eigenvalues, solve_radial,
)
from .ball import SecondEigSplit, SpectrumEntry, assemble_spectrum, harmonic_multiplicity, second_split
from .fields import BallFunction, boundary_quotient, eval_field, nodal_radius, pohozaev_residual
from .polarization import (
    FormEstimate, Hyperplane, alpha0, c_ns, case_kernel_gap, gagliardo_form_mc, lemma1_certificate,
    lemma2_report, polarize, polarize_eval, reflect, support_containment_check,
)

__version__ = "0.1.0"
