"""Space-time fractional Schrodinger equation: Fox H-function solutions and oracles.

Hot kernels (complex log-Gamma, the Mellin-Barnes integrand, the L1 Caputo
sum) are compiled with numba; set ``FRACSCHRO_NUMBA=0`` to use the numpy
versions instead.
"""
import logging

from ._backend import BACKEND, USING_NUMBA, apply_thread_limit
from .core import (ComplexValue, FractionalParams, PhysicalParams, Regime, SampledField,
                   complex_gamma, loggamma, validate_params)
from .errors import BranchError, ConvergenceError, DomainError, FracSchroError, PoleError
from .foxh import (ContourSpec, FoxHResult, HFunctionSpec, fox_h, fox_h_eval,
                   fox_h_zero_limit, mellin_kernel, reciprocal)
from .free_particle import (Branch, EtaSymbol, GreenEval, eta, gaussian_green, green_function,
                            green_oracle_extrapolated, green_on_grid, green_spec, green_zero,
                            propagate, riesz_feller_symbol, trapezoid_mass)
from .linear_potential import (BranchCase, LinearPotentialSpec, PoleReport, TimeFractionalSpec,
                               airy_series, caputo_residual, f_beta_integral, mittag_leffler_solution,
                               phi_hat, phi_space, phi_space_oracle, pole_set, talbot_inverse_laplace,
                               time_solution)
from .special import SeriesConfig, airy_ai, mittag_leffler, wright_m

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "USING_NUMBA", "apply_thread_limit",
    "ComplexValue", "FractionalParams", "PhysicalParams", "Regime", "SampledField",
    "complex_gamma", "loggamma", "validate_params",
    "BranchError", "ConvergenceError", "DomainError", "FracSchroError", "PoleError",
    "ContourSpec", "FoxHResult", "HFunctionSpec", "fox_h", "fox_h_eval", "fox_h_zero_limit",
    "mellin_kernel", "reciprocal",
    "Branch", "EtaSymbol", "GreenEval", "eta", "gaussian_green", "green_function",
    "green_oracle_extrapolated", "green_on_grid", "green_spec", "green_zero", "propagate",
    "riesz_feller_symbol", "trapezoid_mass",
    "BranchCase", "LinearPotentialSpec", "PoleReport", "TimeFractionalSpec", "airy_series",
    "caputo_residual", "f_beta_integral", "mittag_leffler_solution", "phi_hat", "phi_space",
    "phi_space_oracle", "pole_set", "talbot_inverse_laplace", "time_solution",
    "SeriesConfig", "airy_ai", "mittag_leffler", "wright_m",
]
