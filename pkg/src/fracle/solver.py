"""Quasilinearized Haar collocation for fractional Lane-Emden problems.

The problem is

    D^alpha y + lam / x**beta * D^beta y + f(y) = 0,   0 < x < 1,
    y'(0) = a,   c * y'(1) + d * y(1) = b,

with Caputo derivatives, 1 < alpha <= 2 and 0 < beta <= 1.  Each
quasilinearization step expands ``D^alpha y`` in Haar functions, recovers
``y`` and ``D^beta y`` through fractional integrals of the basis with the
boundary data eliminated, and solves the dense collocation system ``T V = B``.
"""
from dataclasses import dataclass, field
import logging
from typing import Callable, Optional

import numpy as np

from ._validation import check_int, check_orders, check_points, check_unit_interval
from .exceptions import (
    ConfigurationError,
    ConvergenceError,
    InvalidBoundaryError,
    NonlinearityError,
)
from .fracops import frac_integral_at_one, frac_integral_values, gamma_fn
from .haar import MAX_LEVEL, CollocationGrid, collocation_grid, haar_matrix, haar_values
from .linalg import condition_number, lu_solve, two_norm_inverse

logger = logging.getLogger(__name__)

DIAGNOSTICS_MAX_LEVEL = 8


@dataclass(frozen=True)
class ProblemSpec:
    alpha: float
    beta: float
    lam: float
    f: Callable = field(repr=False)
    f_prime: Callable = field(repr=False)
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 1.0
    name: str = "custom"

    def __post_init__(self):
        alpha, beta = check_orders(self.alpha, self.beta)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ConfigurationError(f"lam must be positive, got {self.lam!r}")
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ConfigurationError(f"boundary value {name} must be finite")
            object.__setattr__(self, name, float(value))
        if self.d == 0.0:
            raise InvalidBoundaryError("d must be nonzero to eliminate y(0)")
        if not (callable(self.f) and callable(self.f_prime)):
            raise ConfigurationError("f and f_prime must be callable")

    @property
    def boundary_constant(self):
        """``(b - a*c - a*d) / d``, the value of y(0) for zero coefficients."""
        return (self.b - self.a * self.c - self.a * self.d) / self.d


@dataclass(frozen=True)
class SolverConfig:
    J: int = 6
    tol: float = 1e-12
    max_iter: int = 50
    compute_diagnostics: Optional[bool] = None

    def __post_init__(self):
        check_int(self.J, "J", low=0, high=MAX_LEVEL)
        if not (np.isfinite(self.tol) and self.tol > 0):
            raise ConfigurationError(f"tol must be positive, got {self.tol!r}")
        check_int(self.max_iter, "max_iter", low=1)

    @property
    def diagnostics_enabled(self):
        if self.compute_diagnostics is None:
            return self.J <= DIAGNOSTICS_MAX_LEVEL
        return bool(self.compute_diagnostics)


class _Operators:
    """Per-(problem, grid) matrices, reused across quasilinearization steps.

    All matrices are laid out with rows indexed by collocation point and
    columns by wavelet, i.e. transposed relative to the H / P display layout.
    """

    def __init__(self, problem, grid):
        x = grid.collocation_points
        alpha, beta = problem.alpha, problem.beta
        self.x = x
        self.H = haar_matrix(grid).T
        self.P_ab = frac_integral_values(alpha - beta, grid.N, x).T
        self.p_am1_one = frac_integral_at_one(alpha - 1.0, grid)
        self.p_a_one = frac_integral_at_one(alpha, grid)
        self.G = frac_integral_values(alpha, grid.N, x).T - (
            problem.c / problem.d * self.p_am1_one + self.p_a_one
        )
        self.singular = problem.lam / x**beta
        self.linear = problem.a * x + problem.boundary_constant
        self.monomial = problem.a * gamma_fn(2.0) / gamma_fn(2.0 - beta) * x ** (1.0 - beta)
        self.T_linear = self.H + self.singular[:, None] * self.P_ab


def _nonlinearity(problem, y):
    fy = np.asarray(problem.f(y), dtype=float)
    fpy = np.asarray(problem.f_prime(y), dtype=float)
    if not (np.all(np.isfinite(fy)) and np.all(np.isfinite(fpy))):
        raise NonlinearityError("f or f_prime is not finite at the current iterate")
    return fy, fpy


def _assemble(ops, problem, y_prev):
    fy, fpy = _nonlinearity(problem, y_prev)
    T = ops.T_linear + fpy[:, None] * ops.G
    B = -fy + y_prev * fpy - ops.linear * fpy - ops.singular * ops.monomial
    return T, B


def assemble_system(problem, grid, y_prev):
    """Collocation matrix ``T`` and right-hand side ``B`` linearized about ``y_prev``.

    ``y_prev`` holds the previous iterate at the collocation points.
    """
    y_prev = np.asarray(y_prev, dtype=float)
    if y_prev.shape != (grid.N,):
        raise ConfigurationError(f"y_prev must have shape ({grid.N},), got {y_prev.shape}")
    return _assemble(_Operators(problem, grid), problem, y_prev)


@dataclass(frozen=True)
class Solution:
    coeffs: np.ndarray = field(repr=False)
    grid: CollocationGrid
    problem: ProblemSpec
    iterations: int
    last_update: float
    boundary_constant: float
    inv_norm: Optional[float] = None
    kappa: Optional[float] = None
    p_am1_one: np.ndarray = field(default=None, repr=False)
    p_a_one: np.ndarray = field(default=None, repr=False)

    @property
    def final_matrix_diag(self):
        if self.inv_norm is None:
            return None
        return self.inv_norm, self.kappa


def qlm_solve(problem, config=None):
    """Solve ``problem`` by quasilinearization starting from zero coefficients."""
    config = config or SolverConfig()
    grid = collocation_grid(config.J)
    ops = _Operators(problem, grid)
    y_prev = ops.linear.copy()
    update = np.inf
    for it in range(1, config.max_iter + 1):
        T, B = _assemble(ops, problem, y_prev)
        V = lu_solve(T, B)
        y_new = ops.G @ V + ops.linear
        update = float(np.max(np.abs(y_new - y_prev)))
        y_prev = y_new
        logger.debug("J=%d iteration %d update %.3e", config.J, it, update)
        if update <= config.tol:
            break
    else:
        raise ConvergenceError(
            f"no convergence after {config.max_iter} iterations (last update {update:.3e})",
            last_update=update,
            iterations=config.max_iter,
        )
    inv_norm = kappa = None
    if config.diagnostics_enabled:
        inv_norm = two_norm_inverse(T)
        kappa = condition_number(T)
    V.flags.writeable = False
    return Solution(
        coeffs=V,
        grid=grid,
        problem=problem,
        iterations=it,
        last_update=update,
        boundary_constant=problem.boundary_constant,
        inv_norm=inv_norm,
        kappa=kappa,
        p_am1_one=ops.p_am1_one,
        p_a_one=ops.p_a_one,
    )


def _points(x, open_left=False):
    scalar = np.ndim(x) == 0
    if scalar:
        check_unit_interval(x, "x")
    return scalar, check_points(x, open_left=open_left)


def _out(values, scalar):
    return float(values[0]) if scalar else values


def _y(sol, x):
    p = sol.problem
    basis = frac_integral_values(p.alpha, sol.grid.N, x).T - (
        p.c / p.d * sol.p_am1_one + sol.p_a_one
    )
    return basis @ sol.coeffs + p.a * x + sol.boundary_constant


def eval_solution(sol, x):
    """Haar solution ``y(x)``."""
    scalar, x = _points(x)
    return _out(_y(sol, x), scalar)


def eval_derivative(sol, x):
    """First derivative ``y'(x)`` of the representation."""
    scalar, x = _points(x)
    p = sol.problem
    vals = frac_integral_values(p.alpha - 1.0, sol.grid.N, x).T @ sol.coeffs + p.a
    return _out(vals, scalar)


def _caputo_beta(sol, x):
    p = sol.problem
    mono = p.a * gamma_fn(2.0) / gamma_fn(2.0 - p.beta) * x ** (1.0 - p.beta)
    return frac_integral_values(p.alpha - p.beta, sol.grid.N, x).T @ sol.coeffs + mono


def eval_caputo_beta(sol, x):
    """Caputo derivative ``D^beta y(x)``."""
    scalar, x = _points(x)
    return _out(_caputo_beta(sol, x), scalar)


def eval_caputo_alpha(sol, x):
    """Haar expansion of ``D^alpha y`` at arbitrary points (right-continuous)."""
    scalar, x = _points(x)
    return _out(haar_values(sol.grid.N, x).T @ sol.coeffs, scalar)


def eval_caputo_alpha_on_grid(sol):
    return haar_matrix(sol.grid).T @ sol.coeffs


def residual_values(sol, x):
    """Pointwise ``|D^alpha y + lam/x**beta D^beta y + f(y)|`` for ``x`` in (0, 1]."""
    scalar, x = _points(x, open_left=True)
    p = sol.problem
    d_alpha = haar_values(sol.grid.N, x).T @ sol.coeffs
    vals = np.abs(d_alpha + p.lam / x**p.beta * _caputo_beta(sol, x) + p.f(_y(sol, x)))
    return _out(vals, scalar)
