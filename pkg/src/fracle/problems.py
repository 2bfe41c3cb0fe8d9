"""Built-in test problems and a classical (alpha=2, beta=1) shooting oracle."""
from dataclasses import dataclass
import enum
import math

import numpy as np

from .exceptions import ConfigurationError, DomainError, OracleError
from .solver import ProblemSpec


class TestCaseId(enum.IntEnum):
    __test__ = False  # keep pytest from collecting this enum

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3


def make_nonlinearity(kind, coef=1.0, power=5.0, rate=1.0):
    """Return ``(f, f_prime)`` for a named nonlinearity.

    ``zero``: f = 0; ``power``: f = coef * y**power;
    ``exp``: f = coef * exp(rate * y).
    """
    if kind == "zero":
        return (lambda y: np.zeros_like(np.asarray(y, dtype=float)),
                lambda y: np.zeros_like(np.asarray(y, dtype=float)))
    if kind == "power":
        return (lambda y: coef * np.asarray(y, dtype=float) ** power,
                lambda y: coef * power * np.asarray(y, dtype=float) ** (power - 1))
    if kind == "exp":
        return (lambda y: coef * np.exp(rate * np.asarray(y, dtype=float)),
                lambda y: coef * rate * np.exp(rate * np.asarray(y, dtype=float)))
    raise ConfigurationError(f"unknown nonlinearity {kind!r}")


# (lam, nonlinearity kwargs, (a, b, c, d))
_CASES = {
    TestCaseId.CASE1: (2.0, dict(kind="power", power=5.0), (0.0, math.sqrt(3.0) / 2.0, 0.0, 1.0)),
    TestCaseId.CASE2: (2.0, dict(kind="exp", rate=-1.0), (0.0, 0.0, 1.0, 2.0)),
    TestCaseId.CASE3: (1.0, dict(kind="exp", rate=1.0), (0.0, 0.0, 0.0, 1.0)),
}


def _case(case_id):
    try:
        return TestCaseId(int(case_id))
    except (ValueError, TypeError):
        raise ConfigurationError(f"unknown test case {case_id!r}") from None


def builtin(case_id, alpha, beta):
    case_id = _case(case_id)
    lam, nl, (a, b, c, d) = _CASES[case_id]
    f, fp = make_nonlinearity(**nl)
    return ProblemSpec(alpha, beta, lam, f, fp, a, b, c, d, name=f"case{int(case_id)}")


@dataclass(frozen=True)
class ClassicalOracleConfig:
    series_radius: float = 1e-3
    step: float = 1e-4
    shoot_tol: float = 1e-10
    max_bisections: int = 200
    bracket: tuple = (-10.0, 10.0)
    scan_points: int = 201

    def __post_init__(self):
        if not 0 < self.series_radius < 1:
            raise ConfigurationError("series_radius must lie in (0, 1)")
        if not 0 < self.step < self.series_radius:
            raise ConfigurationError("step must be positive and below series_radius")


def _start(y0, f, lam, x0):
    # two-term Taylor expansion about the regular singular point
    fy = f(y0)
    return y0 - fy * x0**2 / (2.0 * (1.0 + lam)), -fy * x0 / (1.0 + lam)


def _integrate(y0, f, lam, cfg, keep=False):
    """RK4 for y'' = -(lam/x) y' - f(y) from the series radius to x = 1.

    Works elementwise on arrays of initial values.  With ``keep`` the nodes,
    values and slopes along the way are returned as well.
    """
    x0 = cfg.series_radius
    n = math.ceil((1.0 - x0) / cfg.step)
    h = (1.0 - x0) / n
    y, v = _start(y0, f, lam, x0)

    def rhs(x, y, v):
        return v, -lam / x * v - f(y)

    if keep:
        ys, vs = [y], [v]
    for i in range(n):
        x = x0 + i * h
        k1y, k1v = rhs(x, y, v)
        k2y, k2v = rhs(x + h / 2, y + h / 2 * k1y, v + h / 2 * k1v)
        k3y, k3v = rhs(x + h / 2, y + h / 2 * k2y, v + h / 2 * k2v)
        k4y, k4v = rhs(x + h, y + h * k3y, v + h * k3v)
        y = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        v = v + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if keep:
            ys.append(y)
            vs.append(v)
    if keep:
        return y, v, (x0 + h * np.arange(n + 1), np.array(ys), np.array(vs))
    return y, v


def _scalar_f(case_id):
    # pure-float nonlinearity: the shooting loop is scalar and hot
    return {
        TestCaseId.CASE1: lambda y: y**5,
        TestCaseId.CASE2: lambda y: math.exp(-y),
        TestCaseId.CASE3: lambda y: math.exp(y),
    }[case_id]


def _shoot_y0(case_id, cfg, y0_hint):
    lam, _, (a, b, c, d) = _CASES[case_id]
    problem = builtin(case_id, 2.0, 1.0)
    lo, hi = cfg.bracket
    grid = np.linspace(lo, hi, cfg.scan_points)
    with np.errstate(all="ignore"):
        y1, v1 = _integrate(grid, problem.f, lam, cfg)
        g = c * v1 + d * y1 - b
    ok = np.isfinite(g)
    brackets = [
        (grid[i], grid[i + 1])
        for i in range(len(grid) - 1)
        if ok[i] and ok[i + 1] and np.sign(g[i]) != np.sign(g[i + 1])
    ]
    if not brackets:
        raise OracleError(f"no sign change of the boundary residual on [{lo}, {hi}]", (lo, hi))
    if y0_hint is None:
        y0_hint = problem.boundary_constant
    left, right = min(brackets, key=lambda br: abs(0.5 * (br[0] + br[1]) - y0_hint))

    f = _scalar_f(case_id)

    def boundary(y0):
        y, v = _integrate(y0, f, lam, cfg)
        return c * v + d * y - b

    g_left = boundary(left)
    for _ in range(cfg.max_bisections):
        mid = 0.5 * (left + right)
        g_mid = boundary(mid)
        if abs(g_mid) <= cfg.shoot_tol:
            return mid
        if np.sign(g_mid) == np.sign(g_left):
            left, g_left = mid, g_mid
        else:
            right = mid
    raise OracleError(f"bisection did not reach shoot_tol within [{left}, {right}]", (left, right))


def classical_reference(case_id, xs, cfg=None, y0_hint=None):
    """Classical solution of the case at ``xs`` by series start + RK4 shooting.

    ``y0_hint`` picks among several admissible values of y(0) (the one whose
    bracket is closest); it defaults to the zero-coefficient boundary constant.
    """
    case_id = _case(case_id)
    cfg = cfg or ClassicalOracleConfig()
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < 0) or np.any(xs > 1) or not np.all(np.isfinite(xs)):
        raise DomainError("xs must lie in [0, 1]")
    lam = _CASES[case_id][0]
    f = _scalar_f(case_id)
    y0 = _shoot_y0(case_id, cfg, y0_hint)
    _, _, (nodes, ys, vs) = _integrate(y0, f, lam, cfg, keep=True)
    h = nodes[1] - nodes[0]

    out = np.empty_like(xs)
    x0 = cfg.series_radius
    for n, x in np.ndenumerate(xs):
        if x <= x0:
            out[n] = y0 - f(y0) * x**2 / (2.0 * (1.0 + lam))
            continue
        i = min(int((x - x0) / h), len(nodes) - 2)
        s = (x - nodes[i]) / h
        # cubic Hermite on [nodes[i], nodes[i+1]]
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s**2 * (3 - 2 * s)
        h11 = s**2 * (s - 1)
        out[n] = h00 * ys[i] + h10 * h * vs[i] + h01 * ys[i + 1] + h11 * h * vs[i + 1]
    return out
