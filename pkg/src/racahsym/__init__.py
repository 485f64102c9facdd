"""Exact-arithmetic symmetry operators on the simplex and their Racah calculus.

The package provides sparse multivariate polynomials and differential
operators over exact rationals, the commuting symmetry-operator families on
the simplex, Jacobi polynomial bases with the Dirichlet inner product,
multivariable Racah difference operators and polynomials, the transition
matrices linking the two worlds, and verification suites that check every
identity with zero tolerance.
"""

from .multipoly import MultiPoly, compose_projective, one_minus_sum
from .racah import (C_value, apply_L, b_value, B_value, check_racah_suite,
                    lambda_eig, lattice_points, racah_norm_sq, racah_value,
                    racah_weight, w_value)
from .rational import DegeneracyError, Rational, format_rational, \
    parse_rational, pochhammer
from .report import CaseResult, VerificationReport
from .simplex import (a_params, check_orthogonality, check_selfadjoint,
                      check_spectral, dirichlet_moment, expand_in_basis,
                      indices_of_degree, indices_up_to, inner_product,
                      jacobi_1d, jacobi_basis, jacobi_norm_sq,
                      spectral_eigenvalue, tau_basis, tau_context, tau_norm_sq)
from .symalg import (SymmetryContext, check_commutation, check_fourth_order,
                     check_gaudin, check_generator_span, gamma_to_b, make_M,
                     make_M_sigma, make_M_tau, make_M_tau_inv, make_t,
                     tau_cycle, tau_cycle_inverse)
from .duality import (SignedSquare, check_basis_action, check_duality,
                      check_transition, g_factor, hat_beta, hat_point,
                      index_operator_apply, norm_product,
                      norm_product_expected, tilde_beta, tilde_point,
                      transition_direct, transition_via_hat,
                      transition_via_tilde)
from .weyl import WeylOp, anticommutator, commutator

__version__ = "0.1.0"
