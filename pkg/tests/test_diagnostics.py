import numpy as np
import pytest

from fracle import ProblemSpec, SolverConfig, builtin, make_nonlinearity, qlm_solve
from fracle.diagnostics import (
    TABLE_RESIDUAL_POINTS,
    convergence_study,
    dense_residual_error,
    rate_of_convergence,
    residual_error,
    residual_points,
    stability_report,
)
from fracle.exceptions import ConfigurationError, ConvergenceError, DomainError
from fracle.linalg import condition_number


def trivial_problem(alpha=1.9, beta=0.9):
    f, fp = make_nonlinearity("zero")
    return ProblemSpec(alpha, beta, 2.0, f, fp, b=0.7)


def test_rate_of_convergence():
    assert rate_of_convergence(0.04, 0.02) == 1.0
    assert rate_of_convergence(0.0344076, 0.01961) == pytest.approx(0.811138, abs=1e-6)
    assert rate_of_convergence(0.3, 0.3) == 0.0
    for bad in [(0.0, 1.0), (1.0, -1.0)]:
        with pytest.raises(DomainError):
            rate_of_convergence(*bad)


def test_residual_point_sets():
    sol = qlm_solve(builtin(1, 1.9, 0.9), SolverConfig(J=2))
    assert np.allclose(residual_points(sol), [0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95])
    assert residual_points(sol, "tables") is TABLE_RESIDUAL_POINTS
    assert np.array_equal(residual_points(sol, "collocation"), sol.grid.collocation_points)
    assert np.array_equal(residual_points(sol, 4), [0.125, 0.375, 0.625, 0.875])
    assert np.array_equal(residual_points(sol, [0.5]), [0.5])
    with pytest.raises(ConfigurationError):
        residual_points(sol, "everywhere")
    assert dense_residual_error(sol, 50) == residual_error(sol, 50)


def test_trivial_problem_residual_zero():
    sol = qlm_solve(trivial_problem(), SolverConfig(J=5))
    assert residual_error(sol) <= 1e-14
    assert residual_error(sol, 333) <= 1e-14
    rows = convergence_study(trivial_problem(), 1, 4)
    assert all(r.E_res <= 1e-14 for r in rows)


def test_published_values_spot():
    sol = qlm_solve(builtin(1, 1.95, 0.95), SolverConfig(J=6))
    assert residual_error(sol) == pytest.approx(0.00151107, rel=1e-4)
    sol = qlm_solve(builtin(2, 1.95, 0.95), SolverConfig(J=6))
    assert residual_error(sol) == pytest.approx(0.000358532, rel=1e-4)


def test_convergence_study_case1():
    rows = convergence_study(builtin(1, 1.85, 0.85), 1, 6, jobs=3)
    expected = [0.0562849, 0.0344076, 0.01961, 0.0103913, 0.00534055, 0.00270619]
    assert [r.J for r in rows] == list(range(1, 7))
    assert rows[0].RoC is None
    for r, e in zip(rows, expected):
        assert r.E_res == pytest.approx(e, rel=1e-4)
    for prev, cur in zip(rows, rows[1:]):
        assert cur.RoC == rate_of_convergence(prev.E_res, cur.E_res)


def test_convergence_study_rate_case2():
    rows = convergence_study(builtin(2, 1.99, 0.99), 5, 6)
    assert rows[1].RoC == pytest.approx(0.99746, abs=1e-5)


def test_convergence_study_levels_checked():
    with pytest.raises(ConfigurationError):
        convergence_study(builtin(1, 1.9, 0.9), 4, 3)
    with pytest.raises(ConfigurationError):
        convergence_study(builtin(1, 1.9, 0.9), 1, 13)


def test_convergence_study_annotates_failing_level():
    with pytest.raises(ConvergenceError, match="J=2"):
        convergence_study(builtin(1, 1.9, 0.9), 2, 3, SolverConfig(max_iter=1))


def test_stability_report_examples():
    cells = stability_report(builtin(1, 1.75, 0.75), [(1.95, 0.95)], [6])
    assert cells[0].inv_norm == pytest.approx(0.707123, abs=1e-6)
    cells = stability_report(builtin(2, 1.75, 0.75), [(1.75, 0.75)], [1])
    assert cells[0].kappa == pytest.approx(4.66365, rel=1e-5)


def test_stability_report_ordering_and_parallel():
    pairs = [(1.95, 0.95), (1.75, 0.75)]
    serial = stability_report(builtin(3, 1.75, 0.75), pairs, [3, 1, 2])
    parallel = stability_report(builtin(3, 1.75, 0.75), pairs, [3, 1, 2], jobs=4)
    assert serial == parallel
    keys = [(c.J, c.alpha, c.beta) for c in serial]
    assert keys == sorted(keys)
    assert all(c.kappa >= 1 and c.inv_norm > 0 for c in serial)


def test_stability_requires_override_for_large_levels():
    with pytest.raises(ConfigurationError):
        stability_report(builtin(1, 1.9, 0.9), [(1.9, 0.9)], [9])


def test_two_by_two_haar_only_system():
    # lam -> 0 and f = 0 leave only the Haar matrix [[1, 1], [1, -1]]: sigma = sqrt(2), sqrt(2)
    f, fp = make_nonlinearity("zero")
    p = ProblemSpec(1.9, 0.9, 1e-300, f, fp, b=1.0)
    cell = stability_report(p, [(1.9, 0.9)], [0])[0]
    assert cell.kappa == pytest.approx(1.0, abs=1e-12)
    assert cell.inv_norm == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    assert condition_number(np.array([[1.0, 1.0], [1.0, -1.0]])) == pytest.approx(1.0)


@pytest.mark.parametrize("case", [1, 2, 3])
def test_stability_bounds(case):
    pairs = [(1.75, 0.75), (1.85, 0.85), (1.95, 0.95)]
    cells = stability_report(builtin(case, 1.75, 0.75), pairs, range(1, 7))
    for c in cells:
        assert 0.60 <= c.inv_norm <= 0.90
        if c.J == 6:
            assert abs(c.inv_norm - 0.7071) <= 0.01
    by_key = {(c.alpha, c.beta, c.J): c.kappa for c in cells}
    for (al, be, J), kappa in by_key.items():
        if J < 6:
            assert by_key[(al, be, J + 1)] / kappa <= 2.0


@pytest.mark.parametrize("case", [1, 2, 3])
def test_mesh_refinement_monotone(solve_cache, case):
    errs = [residual_error(solve_cache(case, 1.95, 0.95, J)) for J in range(1, 10)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_residual_deterministic():
    p = builtin(3, 1.85, 0.85)
    a = residual_error(qlm_solve(p, SolverConfig(J=6)))
    b = residual_error(qlm_solve(p, SolverConfig(J=6)))
    assert a == b
