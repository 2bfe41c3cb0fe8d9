"""scikit-learn style front end for the collocation solver."""
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_points
from .diagnostics import residual_error
from .exceptions import ConfigurationError
from .solver import (
    ProblemSpec,
    SolverConfig,
    eval_caputo_alpha,
    eval_caputo_beta,
    eval_derivative,
    eval_solution,
    qlm_solve,
    residual_values,
)


class HaarLaneEmdenSolver(BaseEstimator):
    """Fractional Lane-Emden solver with the fit/predict protocol.

    ``fit`` takes a :class:`ProblemSpec` in place of a design matrix and
    solves it; ``predict`` evaluates the fitted solution at points of [0, 1].

    Parameters
    ----------
    J : int
        Resolution level; the system has ``2**(J+1)`` unknowns.
    tol : float
        Stop once the max change of the iterate at collocation points is below this.
    max_iter : int
        Cap on quasilinearization steps.
    compute_diagnostics : bool or None
        Compute ``||T^-1||_2`` and kappa of the final matrix; ``None`` means
        only for ``J <= 8``.
    residual_points : str, int or array-like
        Point set used for ``residual_`` and ``score`` (see
        :func:`fracle.diagnostics.residual_points`).

    Attributes
    ----------
    solution_ : Solution
    coef_ : ndarray of shape (2**(J+1),)
        Haar coefficients of ``D^alpha y``.
    n_iter_ : int
    residual_ : float
    inv_norm_, condition_number_ : float or None
    """

    def __init__(self, J=6, tol=1e-12, max_iter=50, compute_diagnostics=None,
                 residual_points="tables"):
        self.J = J
        self.tol = tol
        self.max_iter = max_iter
        self.compute_diagnostics = compute_diagnostics
        self.residual_points = residual_points

    def fit(self, problem, y=None):
        if not isinstance(problem, ProblemSpec):
            raise ConfigurationError("fit expects a ProblemSpec")
        config = SolverConfig(self.J, self.tol, self.max_iter, self.compute_diagnostics)
        sol = qlm_solve(problem, config)
        self.problem_ = problem
        self.solution_ = sol
        self.coef_ = sol.coeffs
        self.n_iter_ = sol.iterations
        self.last_update_ = sol.last_update
        self.inv_norm_ = sol.inv_norm
        self.condition_number_ = sol.kappa
        self.residual_ = residual_error(sol, self.residual_points)
        return self

    def predict(self, X):
        """Solution values ``y(X)``."""
        check_is_fitted(self, "solution_")
        return eval_solution(self.solution_, check_points(X))

    def transform(self, X):
        """Columns ``y, y', D^beta y`` at the points ``X``."""
        check_is_fitted(self, "solution_")
        X = check_points(X)
        sol = self.solution_
        return np.column_stack(
            [eval_solution(sol, X), eval_derivative(sol, X), eval_caputo_beta(sol, X)]
        )

    def fit_transform(self, problem, X):
        return self.fit(problem).transform(X)

    def caputo_alpha(self, X):
        check_is_fitted(self, "solution_")
        return eval_caputo_alpha(self.solution_, check_points(X))

    def residual(self, X):
        check_is_fitted(self, "solution_")
        return residual_values(self.solution_, check_points(X, open_left=True))

    def score(self, X=None, y=None):
        """Negative max residual (higher is better) at ``X`` or the configured set."""
        check_is_fitted(self, "solution_")
        if X is None:
            return -self.residual_
        return -float(np.max(self.residual(X)))
