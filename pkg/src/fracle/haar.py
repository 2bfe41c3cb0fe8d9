"""Uniform Haar wavelets on [0, 1]: indexing, collocation grid, Haar matrix.

Wavelets are numbered by a serial index ``rho >= 1``.  ``rho = 1`` is the
scaling function (identically one on [0, 1)); ``rho = 2**j + k + 1`` is the
wavelet of level ``j`` shifted by ``k``.  Matrices are stored with rows
indexed by ``rho - 1`` and columns by collocation point.
"""
from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from ._validation import check_int, check_unit_interval
from .exceptions import InvalidIndexError

MAX_LEVEL = 12


@dataclass(frozen=True)
class WaveletIndex:
    rho: int
    j: int
    m: int
    k: int
    upsilon1: float
    upsilon2: float
    upsilon3: float

    @property
    def is_scaling(self):
        return self.rho == 1


def index_from_rho(rho):
    """Decompose ``rho`` into level ``j``, ``m = 2**j`` and shift ``k``."""
    if isinstance(rho, bool) or not isinstance(rho, (int, np.integer)) or rho < 1:
        raise InvalidIndexError(f"rho must be an integer >= 1, got {rho!r}")
    rho = int(rho)
    if rho == 1:
        return WaveletIndex(1, 0, 1, 0, 0.0, 1.0, 1.0)
    j = (rho - 1).bit_length() - 1
    m = 1 << j
    k = rho - m - 1
    return WaveletIndex(rho, j, m, k, k / m, (2 * k + 1) / (2 * m), (k + 1) / m)


def haar_eval(idx, t):
    """Value of the Haar function ``idx`` at ``t`` (half-open supports)."""
    t = check_unit_interval(t)
    if idx.rho == 1:
        return 1 if t < 1.0 else 0
    if idx.upsilon1 <= t < idx.upsilon2:
        return 1
    if idx.upsilon2 <= t < idx.upsilon3:
        return -1
    return 0


def integer_integral(v, idx, t):
    """``v``-fold integral of ``h_rho`` from 0 to ``t``."""
    v = check_int(v, "v", low=1)
    t = check_unit_interval(t)
    fact = math.factorial(v)
    if idx.rho == 1:
        return t**v / fact
    u1, u2, u3 = idx.upsilon1, idx.upsilon2, idx.upsilon3
    if t < u1:
        return 0.0
    if t <= u2:
        return (t - u1) ** v / fact
    if t <= u3:
        return ((t - u1) ** v - 2 * (t - u2) ** v) / fact
    return ((t - u1) ** v - 2 * (t - u2) ** v + (t - u3) ** v) / fact


@dataclass(frozen=True)
class CollocationGrid:
    J: int

    @property
    def M(self):
        return 1 << self.J

    @property
    def N(self):
        return 2 * self.M

    @property
    def dt(self):
        return 1.0 / self.N

    @cached_property
    def grid_points(self):
        pts = np.arange(self.N + 1) / self.N
        pts.flags.writeable = False
        return pts

    @cached_property
    def collocation_points(self):
        pts = (np.arange(1, self.N + 1) - 0.5) / self.N
        pts.flags.writeable = False
        return pts


def collocation_grid(J):
    J = check_int(J, "J", low=0, high=MAX_LEVEL)
    return CollocationGrid(J)


def breakpoints(N):
    """Arrays ``(u1, u2, u3)`` of breakpoints for ``rho = 1..N``."""
    rho = np.arange(1, N + 1)
    j = np.array([0] + [int(r - 1).bit_length() - 1 for r in rho[1:]])
    m = 2.0**j
    k = rho - m - 1
    u1 = k / m
    u2 = (k + 0.5) / m
    u3 = (k + 1) / m
    u1[0], u2[0], u3[0] = 0.0, 1.0, 1.0
    return u1, u2, u3


def haar_values(N, x):
    """Matrix ``H[rho-1, i] = h_rho(x[i])`` for ``rho = 1..N``."""
    x = np.asarray(x, dtype=float)[None, :]
    u1, u2, u3 = (u[:, None] for u in breakpoints(N))
    H = np.where((x >= u1) & (x < u2), 1.0, 0.0) - np.where((x >= u2) & (x < u3), 1.0, 0.0)
    H[0] = np.where((x[0] >= 0.0) & (x[0] < 1.0), 1.0, 0.0)
    return H


def haar_matrix(grid):
    return haar_values(grid.N, grid.collocation_points)
