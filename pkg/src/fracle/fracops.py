"""Gamma function and Riemann-Liouville fractional integrals of Haar functions."""
import math

import numpy as np

from ._validation import check_positive, check_unit_interval
from .exceptions import DomainError
from .haar import breakpoints

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma_fn(x):
    """Gamma function for real ``x > 0``."""
    if not isinstance(x, (int, float, np.integer, np.floating)) or not math.isfinite(x) or x <= 0:
        raise DomainError(f"gamma_fn requires a finite x > 0, got {x!r}")
    x = float(x)
    scale = 1.0
    while x < 0.5:
        scale /= x
        x += 1.0
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return scale * _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * acc


def _pos_pow(z, v):
    # 0**v == 0 for v > 0; negative arguments are outside the support
    return np.maximum(z, 0.0) ** v


def frac_integral_haar(upsilon, idx, t):
    """Order-``upsilon`` fractional integral of ``h_rho`` evaluated at ``t``."""
    upsilon = check_positive(upsilon, "upsilon")
    t = check_unit_interval(t)
    g = gamma_fn(upsilon + 1.0)
    if idx.rho == 1:
        return t**upsilon / g
    u1, u2, u3 = idx.upsilon1, idx.upsilon2, idx.upsilon3
    if t < u1:
        return 0.0
    val = (t - u1) ** upsilon
    if t >= u2:
        val -= 2.0 * (t - u2) ** upsilon
    if t >= u3:
        val += (t - u3) ** upsilon
    return val / g


def frac_integral_values(upsilon, N, x):
    """Matrix ``P[rho-1, i] = (I^upsilon h_rho)(x[i])`` for ``rho = 1..N``.

    All three branches of the piecewise formula collapse into one expression
    because each shifted power vanishes left of its breakpoint.
    """
    upsilon = check_positive(upsilon, "upsilon")
    x = np.asarray(x, dtype=float)[None, :]
    u1, u2, u3 = (u[:, None] for u in breakpoints(N))
    P = _pos_pow(x - u1, upsilon) - 2.0 * _pos_pow(x - u2, upsilon) + _pos_pow(x - u3, upsilon)
    P[0] = _pos_pow(x[0], upsilon)
    return P / gamma_fn(upsilon + 1.0)


def frac_integral_matrix(upsilon, grid):
    return frac_integral_values(upsilon, grid.N, grid.collocation_points)


def frac_integral_at_one(upsilon, grid):
    """Vector of ``(I^upsilon h_rho)(1)`` for every wavelet of the grid."""
    return frac_integral_values(upsilon, grid.N, [1.0])[:, 0]


def monomial_frac_integral(gamma_order, nu, t):
    """``I^gamma t**nu = Gamma(nu+1) / Gamma(nu+gamma+1) * t**(gamma+nu)``."""
    gamma_order = check_positive(gamma_order, "gamma_order")
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu!r}")
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t!r}")
    return gamma_fn(nu + 1.0) / gamma_fn(nu + gamma_order + 1.0) * t ** (gamma_order + nu)
