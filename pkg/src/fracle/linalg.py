"""Dense linear algebra: pivoted LU solve, spectral norm of the inverse, kappa."""
import numpy as np

from ._validation import check_square_finite
from .exceptions import ConfigurationError, SingularSystemError

PIVOT_FLOOR = 1e-300
_BLOCK = 64


def lu_factor(T):
    """Blocked right-looking LU with partial (row) pivoting.

    Returns ``(lu, perm)`` with ``T[perm] = L @ U``; ``L`` is unit lower
    triangular and stored below the diagonal of ``lu``.
    """
    a = np.array(check_square_finite(T), dtype=float, copy=True)
    n = a.shape[0]
    perm = np.arange(n)
    for k0 in range(0, n, _BLOCK):
        k1 = min(k0 + _BLOCK, n)
        for k in range(k0, k1):
            p = k + int(np.argmax(np.abs(a[k:, k])))
            if abs(a[p, k]) < PIVOT_FLOOR:
                raise SingularSystemError(f"zero pivot in column {k}")
            if p != k:
                a[[k, p]] = a[[p, k]]
                perm[[k, p]] = perm[[p, k]]
            a[k + 1:, k] /= a[k, k]
            if k + 1 < k1:
                a[k + 1:, k + 1:k1] -= np.outer(a[k + 1:, k], a[k, k + 1:k1])
        if k1 < n:
            # U12 <- L11^{-1} A12, then Schur complement update
            for i in range(k0 + 1, k1):
                a[i, k1:] -= a[i, k0:i] @ a[k0:i, k1:]
            a[k1:, k1:] -= a[k1:, k0:k1] @ a[k0:k1, k1:]
    return a, perm


def lu_solve_factored(lu, perm, B):
    B = np.asarray(B, dtype=float)
    n = lu.shape[0]
    if B.shape[0] != n:
        raise ConfigurationError(f"right-hand side has length {B.shape[0]}, expected {n}")
    x = B[perm].copy()
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def lu_solve(T, B):
    """Solve ``T V = B`` by Gaussian elimination with partial pivoting."""
    lu, perm = lu_factor(T)
    return lu_solve_factored(lu, perm, B)


def singular_values(T):
    T = check_square_finite(T)
    return np.linalg.svd(T, compute_uv=False)


def _extreme_singular_values(T):
    s = singular_values(T)
    smax, smin = s[0], s[-1]
    if smin <= PIVOT_FLOOR or smin <= np.finfo(float).eps * smax * 0.5:
        raise SingularSystemError("matrix is numerically singular")
    return smax, smin


def two_norm_inverse(T):
    """Spectral norm of the inverse, ``1 / sigma_min(T)``."""
    return 1.0 / _extreme_singular_values(T)[1]


def condition_number(T):
    """2-norm condition number ``sigma_max / sigma_min``."""
    smax, smin = _extreme_singular_values(T)
    return smax / smin
