"""Numerical toolkit for first moments of Rankin-Selberg convolutions.

Subpackages:

* ``arithmetic`` - Dirichlet characters, Gauss/Ramanujan/Kloosterman sums,
  generalized divisor sums and the closed-form divisor-sum identity.
* ``special`` - complex gamma/digamma/zeta/Hurwitz-zeta, Bessel J of
  complex order, and the Gauss hypergeometric function.
* ``contour`` - vertical-line, bent and double Mellin-Barnes quadrature.
* ``transforms`` - spectral test functions, the H-transforms and the
  F1/F2/F3 hypergeometric kernels in three representations each.
* ``moments`` - automorphic form models, the Kloosterman-Bessel series
  L_q with its term-by-term decomposition, and the assembled main and
  error terms of the central first moment.
* ``spectral`` - bundled level-1 Maass data, central L-values, and the
  two sides of the Kuznetsov formula and of the first-moment identity.
* ``cli`` - JSON-line verification front-end (``rsmoment`` entry point).
"""

from .arithmetic import (DirichletCharacter, dirichlet_L, kloosterman,
                         lemma41_verify, sigma_general)
from .contour import ContourSpec, line_integral
from .moments import (AutomorphicForm, L_q_decomposed, L_q_direct,
                      L_q_direct_with_tail, MomentTermReport, assemble_rhs,
                      eisenstein_level1, error_term_L1_minus,
                      error_term_L1_plus, error_term_L2, extra_terms_Mpm,
                      holomorphic_delta, maass_form, main_term_M)
from .special import (bessel_j, cgamma, digamma, hurwitz_zeta, hyp2f1,
                      loggamma, zeta, zeta_star)
from .spectral import (MaassFormRecord, SpectralDataset, first_moment_lhs,
                       kuznetsov_sides, load_dataset, lvalue)
from .transforms import (F1, F2, F3, H0, H_plus, H_weight, TestFunction,
                         bessel_j_contour)

__version__ = "0.1.0"

__all__ = [
    "DirichletCharacter", "dirichlet_L", "kloosterman", "lemma41_verify",
    "sigma_general", "ContourSpec", "line_integral", "AutomorphicForm",
    "L_q_decomposed", "L_q_direct", "L_q_direct_with_tail",
    "MomentTermReport", "assemble_rhs", "eisenstein_level1",
    "error_term_L1_minus", "error_term_L1_plus", "error_term_L2",
    "extra_terms_Mpm", "holomorphic_delta", "maass_form", "main_term_M",
    "bessel_j", "cgamma", "digamma", "hurwitz_zeta", "hyp2f1", "loggamma",
    "zeta", "zeta_star", "MaassFormRecord", "SpectralDataset",
    "first_moment_lhs", "kuznetsov_sides", "load_dataset", "lvalue",
    "F1", "F2", "F3", "H0", "H_plus", "H_weight", "TestFunction",
    "bessel_j_contour", "__version__",
]
