"""Haar wavelet collocation with quasilinearization for fractional Lane-Emden problems."""
__version__ = "0.1.0"

from .diagnostics import (
    ConvergenceRow,
    StabilityCell,
    convergence_study,
    dense_residual_error,
    rate_of_convergence,
    residual_error,
    stability_report,
)
from .estimator import HaarLaneEmdenSolver
from .exceptions import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    FracleError,
    InvalidBoundaryError,
    InvalidIndexError,
    NonlinearityError,
    OracleError,
    SingularSystemError,
)
from .haar import CollocationGrid, WaveletIndex, collocation_grid, haar_eval, index_from_rho
from .fracops import frac_integral_haar, frac_integral_matrix, gamma_fn
from .problems import TestCaseId, builtin, classical_reference, make_nonlinearity
from .solver import (
    ProblemSpec,
    Solution,
    SolverConfig,
    eval_caputo_alpha,
    eval_caputo_beta,
    eval_derivative,
    eval_solution,
    qlm_solve,
    residual_values,
)

__all__ = [name for name in dir() if not name.startswith("_")]
