"""Brute-force reference implementations evaluated straight from the defining sets.

Nothing here calls into pathrisk; these are the independent side of every
oracle-equivalence test.
"""

import itertools
import math

import numpy as np


def running_max(x):
    return [max(x[: t + 1]) for t in range(len(x))]


def peak_set(x):
    """{s : X_s equals the sup of X over [0, s]}"""
    return [s for s in range(len(x)) if x[s] == max(x[: s + 1])]


def peak_time(x):
    peaks = peak_set(x)
    return [max(s for s in peaks if s <= t) for t in range(len(x))]


def duration(x):
    return [t - g for t, g in enumerate(peak_time(x))]


def max_drawdown(x):
    """sup over t <= s of X_t - X_s, without reference to the running maximum."""
    return max(x[t] - x[s] for s in range(len(x)) for t in range(s + 1))


def episode(x):
    """(peak, bottom, recovery or None) of the maximum drawdown; None if there is none."""
    rm = running_max(x)
    dd = [r - v for r, v in zip(rm, x)]
    mu = max(dd)
    if mu <= 0:
        return None
    bottom = min(t for t in range(len(x)) if dd[t] == mu)
    peaks = peak_set(x)
    peak = max(s for s in peaks if s <= bottom)
    later = [s for s in peaks if s >= bottom]
    return peak, bottom, (min(later) if later else None)


def empirical_quantile(sample, alpha):
    """inf{d : #(z > d) / n <= 1 - alpha}, searched over the sample points."""
    n = len(sample)
    for d in sorted(sample):
        if sum(z > d for z in sample) / n <= 1 - alpha + 1e-12:
            return d
    raise AssertionError("unreachable")


def tail_mean_quadrature(sample, alpha, steps=200_000):
    """Midpoint rule for (1 / (1 - alpha)) * integral of Q_u du over [alpha, 1]."""
    z = sorted(sample)
    n = len(z)
    h = (1 - alpha) / steps
    total = 0.0
    for i in range(steps):
        u = alpha + (i + 0.5) * h
        total += z[max(1, math.ceil(u * n)) - 1]
    return total * h / (1 - alpha)


# vectorised versions over a matrix of paths (one path per row)

def all_step_paths(steps, alphabet=(-1, 0, 1)):
    """Every path with ``steps`` increments from ``alphabet``, origin 0, as float rows."""
    combos = list(itertools.product(alphabet, repeat=steps))
    incs = np.array(combos, dtype=np.float64).reshape(len(combos), steps)
    return np.hstack([np.zeros((len(incs), 1)), np.cumsum(incs, axis=1)])


def rows_running_max(x):
    return np.stack([x[:, : t + 1].max(axis=1) for t in range(x.shape[1])], axis=1)


def rows_peak_time(x):
    rm = rows_running_max(x)
    in_peak_set = x == rm
    n = x.shape[1]
    out = np.empty(x.shape, dtype=np.int64)
    for t in range(n):
        cand = np.where(in_peak_set[:, : t + 1], np.arange(t + 1), -1)
        out[:, t] = cand.max(axis=1)
    return out


def rows_max_drawdown(x):
    n = x.shape[1]
    best = np.zeros(len(x))
    for s in range(n):
        for t in range(s + 1):
            best = np.maximum(best, x[:, t] - x[:, s])
    return best


def rows_episode(x):
    """(mdd, peak, bottom, recovery) with recovery -1 when absent; zeros when mdd = 0."""
    rm = rows_running_max(x)
    dd = rm - x
    mu = rows_max_drawdown(x)
    n = x.shape[1]
    idx = np.arange(n)
    at_mu = dd == mu[:, None]
    bottom = np.where(at_mu, idx, n).min(axis=1)
    in_peak_set = x == rm
    peak = np.where(in_peak_set & (idx <= bottom[:, None]), idx, -1).max(axis=1)
    rec = np.where(in_peak_set & (idx >= bottom[:, None]), idx, n).min(axis=1)
    rec = np.where(rec == n, -1, rec)
    none = mu <= 0
    peak[none], bottom[none], rec[none] = 0, 0, -1
    return mu, peak, bottom, rec


def gaussian_path(rng, low=10, high=500):
    """Random-walk path with i.i.d. standard normal steps and a random length."""
    n = int(rng.integers(low, high + 1))
    return np.concatenate([[0.0], np.cumsum(rng.standard_normal(n))])
