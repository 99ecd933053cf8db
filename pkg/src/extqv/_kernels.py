"""Numba kernels for the sequential inner loops.

All randomness is drawn ahead of time with numpy, so the kernels are pure
functions of their inputs and bitwise reproducible regardless of scheduling.
fastmath stays off for the same reason. ``cache=True`` persists compiled
artifacts across processes; ``nogil=True`` lets realisations run on threads.
"""

from __future__ import annotations

import math

import numba as nb
import numpy as np

# Model codes shared with the catalog in models.py.
TOY_OU = 0
CUBIC = 1
ONE_MINUS_Y2 = 2
SIN_SIN = 3
OU_WITH_DRIFT = 4


@nb.njit(inline="always")
def _f(code: int, y: float) -> float:
    if code == TOY_OU or code == OU_WITH_DRIFT:
        return y
    if code == CUBIC:
        return y * y * y
    if code == ONE_MINUS_Y2:
        return 1.0 - y * y
    return math.sin(y)  # SIN_SIN


@nb.njit(inline="always")
def _g(code: int, y: float) -> float:
    if code == SIN_SIN:
        return -math.sin(y)
    return -y


@nb.njit(inline="always")
def _beta(code: int) -> float:
    if code == CUBIC or code == ONE_MINUS_Y2:
        return math.sqrt(2.0)
    return 1.0


@nb.njit(inline="always")
def _h_drift(code: int, x: float) -> float:
    if code == OU_WITH_DRIFT:
        return math.sin(x)
    return 0.0


@nb.njit(cache=True, nogil=True)
def euler_path(code, sigma, eps, x0, y0, h, n, substeps, z, x_out, y_out):
    """Explicit Euler for both components with sub-step h.

    Slow update uses the state at the start of the sub-step. Returns the
    first grid index where a non-finite value appears, or -1 on success.
    """
    inv_e2 = 1.0 / (eps * eps)
    sqh = math.sqrt(h)
    x = x0
    y = y0
    x_out[0] = x
    y_out[0] = y
    k = 0
    for i in range(1, n + 1):
        for _ in range(substeps):
            x_new = x + (sigma / eps) * _f(code, y) * h + _h_drift(code, x) * h
            y = y + inv_e2 * _g(code, y) * h + (_beta(code) / eps) * sqh * z[k]
            x = x_new
            k += 1
        x_out[i] = x
        y_out[i] = y
        if not (math.isfinite(x) and math.isfinite(y)):
            return i
    return -1


@nb.njit(cache=True, nogil=True)
def exact_ou_path(code, sigma, eps, x0, y0, a, s, h, n, substeps, z, x_out, y_out):
    """Euler slow update combined with the exact fast OU transition.

    ``a`` is the one-sub-step decay factor and ``s`` the exact conditional
    standard deviation of the fast component over one sub-step.
    """
    x = x0
    y = y0
    x_out[0] = x
    y_out[0] = y
    k = 0
    for i in range(1, n + 1):
        for _ in range(substeps):
            x = x + (sigma / eps) * _f(code, y) * h + _h_drift(code, x) * h
            y = a * y + s * z[k]
            k += 1
        x_out[i] = x
        y_out[i] = y
        if not (math.isfinite(x) and math.isfinite(y)):
            return i
    return -1


@nb.njit(cache=True, nogil=True)
def euler_burn(code, eps, y0, h, nsteps, z):
    """Evolve only the fast component for nsteps Euler sub-steps."""
    inv_e2 = 1.0 / (eps * eps)
    sqh = math.sqrt(h)
    y = y0
    for k in range(nsteps):
        y = y + inv_e2 * _g(code, y) * h + (_beta(code) / eps) * sqh * z[k]
    return y


@nb.njit(cache=True, nogil=True)
def exact_ou_burn(y0, a, s, z):
    y = y0
    for k in range(z.shape[0]):
        y = a * y + s * z[k]
    return y


@nb.njit(cache=True, nogil=True)
def fast_thinned_states(code, eps, y0, h, thin, count, z, out):
    """Record every ``thin``-th state of the fast component (Euler).

    Returns the index of the first non-finite recorded state, or -1.
    """
    inv_e2 = 1.0 / (eps * eps)
    sqh = math.sqrt(h)
    y = y0
    k = 0
    for i in range(count):
        for _ in range(thin):
            y = y + inv_e2 * _g(code, y) * h + (_beta(code) / eps) * sqh * z[k]
            k += 1
        out[i] = y
        if not math.isfinite(y):
            return i
    return -1


@nb.njit(cache=True, nogil=True)
def crossterm_pairs(dx):
    """Twice the sum of increment products over same-sign monotone stretches.

    Keeps its own run bookkeeping (a zero increment inherits the sign of the
    last nonzero one; leading zeros inherit the first nonzero sign) so the
    computation stays independent of the partition-based statistic.
    """
    n = dx.shape[0]
    ms = np.empty(n, dtype=np.int8)
    last = np.int8(0)
    for i in range(n):
        if dx[i] > 0.0:
            last = np.int8(1)
        elif dx[i] < 0.0:
            last = np.int8(-1)
        ms[i] = last
    lead = 0
    while lead < n and ms[lead] == 0:
        lead += 1
    first = ms[lead] if lead < n else np.int8(1)
    for i in range(lead):
        ms[i] = first

    # Kahan-compensated: a long path contributes O(n) cross terms
    acc = 0.0
    comp = 0.0
    run_start = 0
    for j in range(1, n):
        if ms[j] != ms[j - 1]:
            run_start = j
        for i in range(run_start, j):
            term = dx[i] * dx[j] - comp
            bumped = acc + term
            comp = (bumped - acc) - term
            acc = bumped
    return 2.0 * acc


@nb.njit(cache=True, nogil=True)
def total2var_dp(v):
    """Max of squared-increment sums over subsequences of v (endpoints fixed).

    best[j] = max_{i<j} best[i] + (v[j]-v[i])^2; O(k^2) in the number of
    extremal points, which is all the catalog workloads need.
    """
    k = v.shape[0]
    best = np.empty(k, dtype=np.float64)
    best[0] = 0.0
    for j in range(1, k):
        top = -1.0
        for i in range(j):
            d = v[j] - v[i]
            cand = best[i] + d * d
            if cand > top:
                top = cand
        best[j] = top
    return best[k - 1]
