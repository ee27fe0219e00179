"""Vectorised numpy kernels; the fallback for the compiled ``_core`` module.

Every routine performs the same floating-point operations, in the same order
per element, as its compiled twin, so both backends return identical arrays.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# caps the temporary (windows x length) matrices in window_extremes
_BLOCK = 4096


def _scan(x, eq_tol):
    run_max = np.maximum.accumulate(x, axis=1)
    idx = np.arange(x.shape[1], dtype=np.int64)
    at_peak = x >= run_max - eq_tol
    peak = np.maximum.accumulate(np.where(at_peak, idx, 0), axis=1)
    return run_max, peak, at_peak


def scan_rows(x, eq_tol=0.0):
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.shape[1] == 0:
        return np.empty(x.shape), np.empty(x.shape, dtype=np.int64)
    run_max, peak, _ = _scan(x, eq_tol)
    return run_max, peak


def episode_rows(x, eq_tol=0.0):
    x = np.ascontiguousarray(x, dtype=np.float64)
    m, n = x.shape
    if n == 0:
        zeros = np.zeros(m, dtype=np.int64)
        return np.zeros(m), zeros, zeros.copy(), np.full(m, -1, dtype=np.int64)
    run_max, peak_time, at_peak = _scan(x, eq_tol)
    dd = run_max - x
    mdd = dd.max(axis=1)
    bottom = dd.argmax(axis=1).astype(np.int64)
    rows = np.arange(m)
    peak = peak_time[rows, bottom]
    after = at_peak & (np.arange(n)[None, :] > bottom[:, None])
    recovery = np.where(after.any(axis=1), after.argmax(axis=1), -1).astype(np.int64)
    recovery[mdd <= 0.0] = -1
    return mdd, peak, bottom, recovery


def window_extremes(path, length, stride=1, eq_tol=0.0):
    path = np.ascontiguousarray(path, dtype=np.float64)
    n = path.shape[0]
    if length < 1 or stride < 1 or length + 1 > n:
        raise ValueError("window does not fit the path")
    views = sliding_window_view(path, length + 1)[::stride]
    idx = np.arange(length + 1, dtype=np.int64)
    mdd = np.empty(len(views))
    mdur = np.empty(len(views), dtype=np.int64)
    for lo in range(0, len(views), _BLOCK):
        block = views[lo:lo + _BLOCK]
        y = block - block[:, :1]
        run_max, peak, _ = _scan(y, eq_tol)
        mdd[lo:lo + _BLOCK] = (run_max - y).max(axis=1)
        mdur[lo:lo + _BLOCK] = (idx - peak).max(axis=1)
    return mdd, mdur
