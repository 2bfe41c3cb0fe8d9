"""Residual errors, convergence rates and stability sweeps."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
import math
from typing import Optional

import numpy as np

from ._validation import check_int
from .exceptions import ConfigurationError, DomainError
from .haar import MAX_LEVEL
from .solver import DIAGNOSTICS_MAX_LEVEL, SolverConfig, qlm_solve, residual_values

#: Points at which the published residual tables are reproduced.
TABLE_RESIDUAL_POINTS = np.arange(15, 100, 10) / 100.0


def residual_points(sol, points="tables"):
    """Resolve a residual-point specification to an array of abscissae.

    ``"tables"`` is the fixed set 0.15, 0.25, ..., 0.95; ``"collocation"`` the
    solution's own collocation points; an integer ``n`` gives ``n`` uniform
    midpoints of [0, 1]; anything else is taken as explicit points.
    """
    if isinstance(points, str):
        if points == "tables":
            return TABLE_RESIDUAL_POINTS
        if points == "collocation":
            return sol.grid.collocation_points
        raise ConfigurationError(f"unknown residual point set {points!r}")
    if isinstance(points, (int, np.integer)) and not isinstance(points, bool):
        n = check_int(points, "n", low=1)
        return (np.arange(n) + 0.5) / n
    return np.asarray(points, dtype=float)


def residual_error(sol, points="tables"):
    """Maximum absolute residual of the equation over ``points``."""
    return float(np.max(residual_values(sol, residual_points(sol, points))))


def dense_residual_error(sol, n):
    return residual_error(sol, int(n))


def rate_of_convergence(e_coarse, e_fine):
    """``log2(e_coarse / e_fine)``."""
    if not (e_coarse > 0 and e_fine > 0):
        raise DomainError(f"errors must be positive, got {e_coarse!r}, {e_fine!r}")
    return math.log2(e_coarse / e_fine)


@dataclass(frozen=True)
class ConvergenceRow:
    J: int
    E_res: float
    RoC: Optional[float] = None
    iterations: int = 0


@dataclass(frozen=True)
class StabilityCell:
    alpha: float
    beta: float
    J: int
    inv_norm: float
    kappa: float


def _solve_at(problem, J, config):
    cfg = replace(config or SolverConfig(), J=J)
    try:
        return qlm_solve(problem, cfg)
    except Exception as exc:
        exc.args = (f"J={J}: {exc.args[0] if exc.args else exc}",) + exc.args[1:]
        raise


def convergence_study(problem, J_min, J_max, config=None, points="tables", jobs=1):
    """Residual error per level ``J_min..J_max`` with chained rates."""
    J_min = check_int(J_min, "J_min", low=0, high=MAX_LEVEL)
    J_max = check_int(J_max, "J_max", low=J_min, high=MAX_LEVEL)
    config = replace(config or SolverConfig(), compute_diagnostics=False)
    levels = list(range(J_min, J_max + 1))

    def run(J):
        sol = _solve_at(problem, J, config)
        return residual_error(sol, points), sol.iterations

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(run, levels))
    rows = []
    for J, (err, iters) in zip(levels, results):
        roc = rate_of_convergence(rows[-1].E_res, err) if rows and err > 0 and rows[-1].E_res > 0 else None
        rows.append(ConvergenceRow(J, err, roc, iters))
    return rows


def stability_report(problem, alphas_betas, J_list, config=None, allow_large=False, jobs=1):
    """``||T^-1||_2`` and ``kappa(T)`` of the converged system for each cell.

    ``problem`` supplies everything except the orders, which are replaced by
    each ``(alpha, beta)`` pair.  Cells come back sorted by J, then orders.
    """
    J_list = [check_int(J, "J", low=0, high=MAX_LEVEL) for J in J_list]
    if not allow_large and any(J > DIAGNOSTICS_MAX_LEVEL for J in J_list):
        raise ConfigurationError(
            f"stability diagnostics above J={DIAGNOSTICS_MAX_LEVEL} need allow_large=True"
        )
    config = replace(config or SolverConfig(), compute_diagnostics=True)
    cells = sorted((J, float(al), float(be)) for al, be in alphas_betas for J in J_list)

    def run(cell):
        J, al, be = cell
        sol = _solve_at(replace(problem, alpha=al, beta=be), J, config)
        return StabilityCell(al, be, J, sol.inv_norm, sol.kappa)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        return list(pool.map(run, cells))
