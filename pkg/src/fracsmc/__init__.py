"""Spectral Monte Carlo solver for the fractional Poisson equation on balls.

Walk-on-spheres estimates at radial Jacobi–Gauss nodes are combined with a
fractional-weighted interpolant whose fractional Laplacian is known in
closed form; residual correction then drives the nodal error down
geometrically.
"""
__version__ = "0.1.0"

from .eigenbasis import (ProblemSpec, SpectralCoeffs, eigenfunction_radial,
                         eval_weighted_expansion, lambda_1d, mu, reference_solution,
                         reference_solve, weighted_orthogonality_constant)
from .interp import (Interpolant1D, InterpolantRadial, coeff_matrix_1d, coeff_matrix_radial,
                     eval_1d, eval_plain_radial, eval_radial, frac_lap_coeffs_1d,
                     frac_lap_coeffs_radial)
from .jacobi import JacobiIndex, QuadratureRule, gamma_norm, gauss_rule, jacobi_eval
from .problems import example_problem
from .rng import RngStream
from .smc import (ErrorSeries, SmcConfig, SmcState, error_inf, init_solution, iterate,
                  residual_source, run)
from .specfun import beta, c_ns, kernel_constant, log_gamma, reg_inc_beta
from .wos import (DomainBall, WosEstimate, estimate_u, run_path, sample_exit,
                  sample_interior, source_factor, step_weight)
