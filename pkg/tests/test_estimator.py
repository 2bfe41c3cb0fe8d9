import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from fracle import HaarLaneEmdenSolver, builtin, eval_solution
from fracle.exceptions import ConfigurationError, DomainError


def test_get_set_params_and_clone():
    est = HaarLaneEmdenSolver(J=4, tol=1e-10)
    params = est.get_params()
    assert params == {"J": 4, "tol": 1e-10, "max_iter": 50, "compute_diagnostics": None,
                      "residual_points": "tables"}
    est.set_params(J=5)
    assert clone(est).J == 5


def test_fit_predict_transform():
    est = HaarLaneEmdenSolver(J=6).fit(builtin(1, 1.95, 0.95))
    assert est.coef_.shape == (128,)
    assert est.n_iter_ <= 10
    assert est.residual_ == pytest.approx(0.00151107, rel=1e-4)
    assert est.inv_norm_ == pytest.approx(0.707123, abs=1e-6)
    assert est.score() == -est.residual_
    X = np.linspace(0, 1, 7)
    y = est.predict(X)
    assert np.array_equal(y, eval_solution(est.solution_, X))
    Z = est.transform(X)
    assert Z.shape == (7, 3) and np.array_equal(Z[:, 0], y)
    assert Z[0, 1] == pytest.approx(0.0, abs=1e-15)
    assert est.predict([[0.5]]).shape == (1,)
    assert est.residual([0.5, 0.9]).shape == (2,)
    assert est.caputo_alpha([0.3]).shape == (1,)
    assert est.score([0.25, 0.75]) <= 0


def test_fit_transform_equals_fit_then_transform():
    X = [0.1, 0.4]
    p = builtin(2, 1.9, 0.9)
    assert np.array_equal(HaarLaneEmdenSolver(J=3).fit_transform(p, X), HaarLaneEmdenSolver(J=3).fit(p).transform(X))


def test_validation():
    est = HaarLaneEmdenSolver(J=3)
    with pytest.raises(NotFittedError):
        est.predict([0.5])
    with pytest.raises(ConfigurationError):
        est.fit(np.ones((3, 2)))
    est.fit(builtin(3, 1.9, 0.9))
    with pytest.raises(DomainError):
        est.predict([1.5])
    with pytest.raises(DomainError):
        est.predict([])
    with pytest.raises(DomainError):
        est.residual([0.0])
    with pytest.raises(ConfigurationError):
        HaarLaneEmdenSolver(J=20).fit(builtin(3, 1.9, 0.9))


def test_large_level_skips_diagnostics_by_default():
    est = HaarLaneEmdenSolver(J=2, compute_diagnostics=False).fit(builtin(1, 1.9, 0.9))
    assert est.inv_norm_ is None and est.condition_number_ is None
