"""Empirical risk functionals over finite samples.

The quantile is the upper order statistic picked out by
``inf{d : P(Z > d) <= 1 - alpha}`` on the empirical law, with no
interpolation. The tail mean integrates that step function exactly over
``[alpha, 1]``, so levels that are not multiples of 1/n carry the partial
weight of the boundary order statistic.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .series import ReturnSeries


def as_sample(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise DomainError("empirical sample is empty")
    if not np.all(np.isfinite(arr)):
        raise DomainError("empirical sample contains non-finite values")
    return arr


def _check_alpha(alpha):
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"confidence level must lie in [0, 1), got {alpha!r}")


def _rank(alpha: float, n: int) -> int:
    # rounding absorbs float noise such as 0.7 * 10 == 7.000000000000001
    return max(1, math.ceil(round(alpha * n, 9)))


def quantile(sample, alpha: float) -> float:
    _check_alpha(alpha)
    z = np.sort(as_sample(sample))
    return float(z[_rank(alpha, len(z)) - 1])


def tail_mean(sample, alpha: float) -> float:
    _check_alpha(alpha)
    z = np.sort(as_sample(sample))
    n = len(z)
    k = _rank(alpha, n)
    head = (k / n - alpha) * z[k - 1]
    value = (head + z[k:].sum() / n) / (1.0 - alpha)
    # the exact value lies in [z_(k), z_(n)]; clip rounding drift outside it
    return float(min(max(value, z[k - 1]), z[-1]))


def deviation(sample) -> float:
    """Sample standard deviation (denominator n - 1)."""
    z = as_sample(sample)
    if len(z) < 2:
        raise DomainError("deviation needs at least 2 observations")
    return float(np.std(z, ddof=1))


def skewness(sample) -> float:
    """Moment skewness m3 / m2**1.5 with denominator n."""
    z = as_sample(sample)
    if len(z) < 3:
        raise DomainError("skewness needs at least 3 observations")
    d = z - z.mean()
    m2 = np.mean(d * d)
    if m2 == 0.0:
        raise DomainError("skewness is undefined for a sample with zero deviation")
    return float(np.mean(d ** 3) / m2 ** 1.5)


def volatility(returns: ReturnSeries) -> float:
    """Per-period deviation scaled by sqrt(periods_per_year)."""
    if len(returns) < 2:
        raise DomainError("volatility needs at least 2 returns")
    return deviation(returns.values) * math.sqrt(returns.periods_per_year)


def expected_shortfall(returns: ReturnSeries, alpha: float) -> float:
    """Tail mean of per-period losses -r at level alpha, reported as a positive loss."""
    return tail_mean(-np.asarray(returns.values), alpha)


def pearson(a, b) -> float:
    x, y = as_sample(a), as_sample(b)
    if len(x) != len(y):
        raise DomainError(f"samples differ in length ({len(x)} vs {len(y)})")
    if len(x) < 2:
        raise DomainError("correlation needs at least 2 pairs")
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DomainError("correlation is undefined for a sample with zero deviation")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))
