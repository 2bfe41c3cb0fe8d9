"""Input validation helpers shared by the public functions."""
import math
import numbers

import numpy as np

from .exceptions import ConfigurationError, DomainError


def check_unit_interval(t, name="t"):
    """Return ``t`` as float (or float array) after checking it lies in [0, 1]."""
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {t!r}")
    return float(arr) if arr.ndim == 0 else arr


def check_positive(x, name):
    if not isinstance(x, numbers.Real) or not math.isfinite(x) or x <= 0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return float(x)


def check_int(value, name, low=None, high=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if (low is not None and value < low) or (high is not None and value > high):
        raise ConfigurationError(f"{name}={value} outside [{low}, {high}]")
    return value


def check_orders(alpha, beta):
    """Validate the pair of derivative orders 1 < alpha <= 2, 0 < beta <= 1."""
    try:
        alpha, beta = float(alpha), float(beta)
    except (TypeError, ValueError):
        raise ConfigurationError(f"orders must be reals, got {alpha!r}, {beta!r}") from None
    if not 1.0 < alpha <= 2.0:
        raise ConfigurationError(f"alpha must satisfy 1 < alpha <= 2, got {alpha}")
    if not 0.0 < beta <= 1.0:
        raise ConfigurationError(f"beta must satisfy 0 < beta <= 1, got {beta}")
    return alpha, beta


def check_points(X, open_left=False):
    """Coerce evaluation points to a 1-D float array inside [0, 1].

    With ``open_left`` the point 0 is rejected too (the 1/x**beta factor).
    """
    arr = np.atleast_1d(np.asarray(X, dtype=float)).ravel()
    if arr.size == 0:
        raise DomainError("no evaluation points given")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("evaluation points must lie in [0, 1]")
    if open_left and np.any(arr <= 0.0):
        raise DomainError("evaluation points must lie in (0, 1]")
    return arr


def check_square_finite(T):
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ConfigurationError(f"expected a square matrix, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise ConfigurationError("matrix has non-finite entries")
    return T
