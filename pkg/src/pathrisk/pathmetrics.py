"""Drawdown magnitude and duration along a single path.

All functions accept a PathProcess or any finite 1-D sequence; the origin need
not be zero, so shifted and scaled copies of a path can be passed directly.

Equality with the running maximum is decided by ``eq_tol`` (default 0): step
t is "at peak" when ``x[t] >= running_max[t] - eq_tol``. A value exactly equal
to the earlier maximum therefore counts as a return to the peak.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import DomainError
from .series import as_path_array


@dataclass(frozen=True)
class DrawdownEpisode:
    """Peak, bottom and recovery bracketing the deepest drawdown.

    ``recovery`` is None when the path does not regain its peak before the
    horizon; the episode is then censored and ``duration`` runs to the horizon.
    """

    peak: int
    bottom: int
    recovery: Optional[int]
    duration: int
    censored: bool
    magnitude: float


def _scan(path, eq_tol):
    x = as_path_array(path)
    run_max, peak = kernels.scan_rows(x[None, :], eq_tol)
    return x, run_max[0], peak[0]


def running_max(path, eq_tol: float = 0.0) -> np.ndarray:
    return _scan(path, eq_tol)[1]


def drawdown(path, eq_tol: float = 0.0) -> np.ndarray:
    """D_t = running_max_t - X_t, in the units of the path (log units)."""
    x, run_max, _ = _scan(path, eq_tol)
    return run_max - x


def max_drawdown(path) -> float:
    return float(drawdown(path).max())


def peak_time(path, eq_tol: float = 0.0) -> np.ndarray:
    """G_t: the last index s <= t at which the path sat on its running maximum."""
    return _scan(path, eq_tol)[2]


def duration(path, eq_tol: float = 0.0) -> np.ndarray:
    """Periods spent below the last peak: t - G_t."""
    g = peak_time(path, eq_tol)
    return np.arange(len(g), dtype=np.int64) - g


def max_duration(path, eq_tol: float = 0.0) -> int:
    # the open excursion at the horizon is included since t = T is in the range
    return int(duration(path, eq_tol).max())


def max_drawdown_episode(path, eq_tol: float = 0.0) -> DrawdownEpisode:
    x = as_path_array(path)
    mdd, peak, bottom, recovery = kernels.episode_rows(x[None, :], eq_tol)
    magnitude = float(mdd[0])
    if not magnitude > 0.0:
        raise DomainError("path has no drawdown; the maximum-drawdown episode is undefined")
    peak, bottom, rec = int(peak[0]), int(bottom[0]), int(recovery[0])
    horizon = len(x) - 1
    if rec < 0:
        return DrawdownEpisode(peak, bottom, None, horizon - peak, True, magnitude)
    return DrawdownEpisode(peak, bottom, rec, rec - peak, False, magnitude)


def episode_duration(path, eq_tol: float = 0.0) -> int:
    """Duration of the maximum-drawdown episode, 0 for a path with no drawdown."""
    try:
        return max_drawdown_episode(path, eq_tol).duration
    except DomainError:
        return 0


def liquidation_stopping_time(path, threshold: int, eq_tol: float = 0.0) -> Optional[int]:
    """First t with duration_t >= threshold, or None when the threshold is never reached."""
    if int(threshold) != threshold or threshold < 1:
        raise DomainError(f"liquidation threshold must be a positive integer, got {threshold!r}")
    hits = np.flatnonzero(duration(path, eq_tol) >= threshold)
    return int(hits[0]) if hits.size else None
