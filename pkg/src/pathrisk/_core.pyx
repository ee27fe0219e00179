# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-pass kernels. Mirrors pathrisk._core_py exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def scan_rows(const double[:, ::1] x, double eq_tol=0.0):
    cdef Py_ssize_t m = x.shape[0], n = x.shape[1], i, t
    cdef double best
    run_max = np.empty((m, n), dtype=np.float64)
    peak = np.empty((m, n), dtype=np.int64)
    cdef double[:, ::1] rm = run_max
    cdef cnp.int64_t[:, ::1] g = peak
    cdef cnp.int64_t last
    with nogil:
        for i in range(m):
            if n == 0:
                continue
            best = x[i, 0]
            last = 0
            rm[i, 0] = best
            g[i, 0] = 0
            for t in range(1, n):
                if x[i, t] > best:
                    best = x[i, t]
                if x[i, t] >= best - eq_tol:
                    last = t
                rm[i, t] = best
                g[i, t] = last
    return run_max, peak


def episode_rows(const double[:, ::1] x, double eq_tol=0.0):
    cdef Py_ssize_t m = x.shape[0], n = x.shape[1], i, t
    cdef double best, dd, worst
    cdef cnp.int64_t last, pk, bt, rc
    mdd = np.zeros(m, dtype=np.float64)
    peak = np.zeros(m, dtype=np.int64)
    bottom = np.zeros(m, dtype=np.int64)
    recovery = np.full(m, -1, dtype=np.int64)
    cdef double[::1] mdd_v = mdd
    cdef cnp.int64_t[::1] pk_v = peak, bt_v = bottom, rc_v = recovery
    with nogil:
        for i in range(m):
            if n == 0:
                continue
            best = x[i, 0]
            last = 0
            worst = 0.0
            pk = 0
            bt = 0
            rc = -1
            for t in range(1, n):
                if x[i, t] > best:
                    best = x[i, t]
                if x[i, t] >= best - eq_tol:
                    last = t
                    if rc < 0 and t > bt and worst > 0.0:
                        rc = t
                dd = best - x[i, t]
                if dd > worst:
                    worst = dd
                    bt = t
                    pk = last
                    rc = -1
            mdd_v[i] = worst
            pk_v[i] = pk
            bt_v[i] = bt
            rc_v[i] = rc
    return mdd, peak, bottom, recovery


def window_extremes(const double[::1] path, Py_ssize_t length, Py_ssize_t stride=1,
                    double eq_tol=0.0):
    cdef Py_ssize_t n = path.shape[0], count, w, s, j
    cdef double base, y, best, dd, worst
    cdef Py_ssize_t last, longest
    if length < 1 or stride < 1 or length + 1 > n:
        raise ValueError("window does not fit the path")
    count = (n - 1 - length) // stride + 1
    mdd = np.empty(count, dtype=np.float64)
    mdur = np.empty(count, dtype=np.int64)
    cdef double[::1] mdd_v = mdd
    cdef cnp.int64_t[::1] mdur_v = mdur
    with nogil:
        for w in range(count):
            s = w * stride
            base = path[s]
            best = 0.0
            worst = 0.0
            last = 0
            longest = 0
            for j in range(1, length + 1):
                y = path[s + j] - base
                if y > best:
                    best = y
                if y >= best - eq_tol:
                    last = j
                elif j - last > longest:
                    longest = j - last
                dd = best - y
                if dd > worst:
                    worst = dd
            mdd_v[w] = worst
            mdur_v[w] = longest
    return mdd, mdur
