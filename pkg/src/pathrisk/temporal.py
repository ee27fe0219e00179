"""Temporal risk measures: risk functionals applied to path-derived random times.

A temporal risk measure is the composition of a transformation that maps a path
to a time (maximum duration, maximum-drawdown episode duration, liquidation
stopping time) with a functional of the resulting sample (deviation, quantile,
tail mean). Conditional Expected Drawdown is the spatial counterpart built on
maximum drawdown; it keeps positive homogeneity and convexity, which the
duration measures lose.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import kernels
from . import pathmetrics as pm
from . import riskfunc as rf
from .errors import DomainError, SizeError
from .series import FULL, ReturnSeries, WindowSpec, as_path_array, path_from_returns

Window = Union[WindowSpec, str]


# -- transforms ---------------------------------------------------------------

@dataclass(frozen=True)
class TemporalTransform:
    """A named path -> time mapping, measured in periods."""

    name: str
    func: Callable[[np.ndarray], float] = field(repr=False)

    def __call__(self, path) -> float:
        return self.func(path)


def _lst_or_zero(threshold):
    def stopping_time(path):
        hit = pm.liquidation_stopping_time(path, threshold)
        return 0 if hit is None else hit
    return stopping_time


MAX_DURATION = TemporalTransform("max_duration", pm.max_duration)
EPISODE_DURATION = TemporalTransform("episode_duration", pm.episode_duration)


def liquidation_time(threshold: int) -> TemporalTransform:
    """Liquidation stopping time, scored 0 when the threshold is never reached."""
    if int(threshold) != threshold or threshold < 1:
        raise DomainError(f"liquidation threshold must be a positive integer, got {threshold!r}")
    return TemporalTransform(f"liquidation_time({threshold})", _lst_or_zero(threshold))


# -- samples over windows -----------------------------------------------------

def _window_extremes(returns: ReturnSeries, spec: WindowSpec):
    if spec.length > len(returns):
        raise SizeError(
            f"window length {spec.length} needs at least {spec.length} returns, got {len(returns)}",
            required=spec.length, available=len(returns),
        )
    path = path_from_returns(returns).values
    return kernels.window_extremes(path, spec.length, spec.stride)


def max_drawdown_sample(returns: ReturnSeries, spec: Window) -> np.ndarray:
    """Maximum drawdown of every rolling window, or the per-step drawdown series for "full"."""
    if spec == FULL:
        return pm.drawdown(path_from_returns(returns))
    return _window_extremes(returns, spec)[0]


def max_duration_sample(returns: ReturnSeries, spec: Window) -> np.ndarray:
    """Maximum duration of every rolling window, or the per-step duration series for "full"."""
    if spec == FULL:
        return pm.duration(path_from_returns(returns)).astype(np.float64)
    return _window_extremes(returns, spec)[1].astype(np.float64)


def _check_window(spec):
    if spec != FULL and not isinstance(spec, WindowSpec):
        raise DomainError(f"window must be a WindowSpec or {FULL!r}, got {spec!r}")


# -- measures over a return series --------------------------------------------

def ced(returns: ReturnSeries, spec: Window, alpha: float) -> float:
    """Conditional Expected Drawdown: tail mean of the maximum-drawdown sample."""
    _check_window(spec)
    return rf.tail_mean(max_drawdown_sample(returns, spec), alpha)


def conditional_expected_duration(returns: ReturnSeries, spec: Window, alpha: float) -> float:
    _check_window(spec)
    return rf.tail_mean(max_duration_sample(returns, spec), alpha)


def duration_deviation(returns: ReturnSeries, spec: Window) -> float:
    _check_window(spec)
    sample = max_duration_sample(returns, spec)
    if len(sample) < 2:
        raise SizeError("duration deviation needs at least 2 windows",
                        required=2, available=len(sample))
    return rf.deviation(sample)


def duration_quantile(returns: ReturnSeries, spec: Window, alpha: float) -> float:
    _check_window(spec)
    return rf.quantile(max_duration_sample(returns, spec), alpha)


@dataclass(frozen=True)
class RiskReport:
    volatility: float
    expected_shortfall: float
    ced: float
    mean_max_duration: float
    duration_deviation: float
    duration_quantile: float
    conditional_expected_duration: float
    alpha: float
    window: Union[int, str]
    stride: int
    periods_per_year: int
    n_returns: int
    n_windows: int
    percent: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


def minimum_returns(spec: Window) -> int:
    """Fewest returns for which risk_report is defined (two windows, or three steps)."""
    if spec == FULL:
        return 2
    return spec.length + spec.stride


def risk_report(returns: ReturnSeries, spec: Window, alpha: float = 0.9,
                percent: bool = False) -> RiskReport:
    """Single-period and path-dependent statistics of one return series.

    With ``percent`` the maximum-drawdown sample is mapped to 1 - exp(-D)
    before the tail mean, so CED reads as a fractional loss of value.
    """
    _check_window(spec)
    need = minimum_returns(spec)
    if len(returns) < need:
        what = "full-history statistics" if spec == FULL else (
            f"window {spec.length} with stride {spec.stride}")
        raise SizeError(f"{what} needs at least {need} returns, got {len(returns)}",
                        required=need, available=len(returns))
    if spec == FULL:
        dd = max_drawdown_sample(returns, spec)
        dur = max_duration_sample(returns, spec)
    else:
        mdd, mdur = _window_extremes(returns, spec)
        dd, dur = mdd, mdur.astype(np.float64)
    if percent:
        dd = -np.expm1(-dd)
    return RiskReport(
        volatility=rf.volatility(returns),
        expected_shortfall=rf.expected_shortfall(returns, alpha),
        ced=rf.tail_mean(dd, alpha),
        mean_max_duration=float(dur.mean()),
        duration_deviation=rf.deviation(dur),
        duration_quantile=rf.quantile(dur, alpha),
        conditional_expected_duration=rf.tail_mean(dur, alpha),
        alpha=alpha,
        window=FULL if spec == FULL else spec.length,
        stride=1 if spec == FULL else spec.stride,
        periods_per_year=returns.periods_per_year,
        n_returns=len(returns),
        n_windows=1 if spec == FULL else len(dd),
        percent=percent,
    )


# -- measures over a sample of paths ------------------------------------------

@dataclass(frozen=True)
class PathSampleMeasure:
    """rho(theta(X_1), ..., theta(X_m)): a functional of a path-derived sample.

    ``functional`` is one of "deviation", "quantile", "tail_mean" or "mean".
    """

    transform: TemporalTransform
    functional: str
    alpha: Optional[float] = None

    def sample(self, paths) -> np.ndarray:
        return np.array([float(self.transform(p)) for p in paths])

    def __call__(self, paths) -> float:
        z = self.sample(paths)
        if self.functional == "deviation":
            return rf.deviation(z)
        if self.functional == "quantile":
            return rf.quantile(z, self.alpha)
        if self.functional == "tail_mean":
            return rf.tail_mean(z, self.alpha)
        if self.functional == "mean":
            return float(rf.as_sample(z).mean())
        raise DomainError(f"unknown functional {self.functional!r}")

    @property
    def name(self) -> str:
        level = "" if self.alpha is None else f"_{self.alpha:g}"
        return f"{self.functional}{level}[{self.transform.name}]"


MAX_DRAWDOWN = TemporalTransform("max_drawdown", pm.max_drawdown)


def ced_measure(alpha: float) -> PathSampleMeasure:
    return PathSampleMeasure(MAX_DRAWDOWN, "tail_mean", alpha)


def duration_measures(alpha: float) -> list[PathSampleMeasure]:
    """Duration deviation, duration quantile and Conditional Expected Duration."""
    return [
        PathSampleMeasure(MAX_DURATION, "deviation"),
        PathSampleMeasure(MAX_DURATION, "quantile", alpha),
        PathSampleMeasure(MAX_DURATION, "tail_mean", alpha),
    ]


# -- axiom and coherence checks -----------------------------------------------

@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    checked: int
    counterexample: Optional[dict] = None


@dataclass(frozen=True)
class AxiomReport:
    transform: str
    normalization: AxiomResult
    shift_invariance: AxiomResult
    scaling_invariance: AxiomResult

    @property
    def passed(self) -> bool:
        return (self.normalization.passed and self.shift_invariance.passed
                and self.scaling_invariance.passed)

    def rows(self):
        for axiom in ("normalization", "shift_invariance", "scaling_invariance"):
            yield axiom, getattr(self, axiom)


def _same(a, b, tol):
    if tol == 0:
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def check_temporal_axioms(transform: Callable, fixtures: Sequence, shifts: Sequence[float],
                          scales: Sequence[float], tol: float = 0.0) -> AxiomReport:
    """Test normalization, shift invariance and scaling invariance on fixtures.

    Constant paths for the normalization check take the length of every
    fixture and the levels ``0`` and each shift. Comparisons are exact unless
    ``tol`` (relative, floored at 1) is given, which is only useful for
    real-valued transforms such as maximum drawdown.
    """
    fixtures = [as_path_array(f) for f in fixtures]
    if not fixtures:
        raise DomainError("at least one fixture path is required")
    if any(not s > 0 for s in scales):
        raise DomainError("scales must be strictly positive")
    name = getattr(transform, "name", getattr(transform, "__name__", repr(transform)))

    checked, bad = 0, None
    for length in sorted({len(f) for f in fixtures}):
        for level in (0.0, *shifts):
            value = transform(np.full(length, float(level)))
            checked += 1
            if not _same(value, 0, tol) and bad is None:
                bad = {"length": length, "level": level, "value": value}
    normalization = AxiomResult(bad is None, checked, bad)

    def invariance(ops, label):
        checked = 0
        for i, x in enumerate(fixtures):
            base = transform(x)
            for op in ops:
                moved = transform(x + op if label == "shift" else x * op)
                checked += 1
                if not _same(moved, base, tol):
                    return AxiomResult(False, checked, {
                        "fixture": i, label: op, "original": base, "transformed": moved})
        return AxiomResult(True, checked)

    return AxiomReport(name, normalization, invariance(shifts, "shift"),
                       invariance(scales, "scale"))


@dataclass(frozen=True)
class HomogeneityWitness:
    measure: float
    scaled_measure: float
    homogeneous_value: float
    lam: float
    inconclusive: bool

    @property
    def homogeneity_fails(self) -> bool:
        return not self.inconclusive and self.scaled_measure != self.homogeneous_value


def homogeneity_witness(measure: Callable, path_sample: Sequence, lam: float) -> HomogeneityWitness:
    """Evaluate measure(paths), measure(lam * paths) and lam * measure(paths).

    For a scale-invariant transform the first two agree while the third does
    not, so positive homogeneity fails. A zero measure is reported as
    inconclusive since homogeneity holds trivially there.
    """
    if not lam > 0 or lam == 1:
        raise DomainError(f"lambda must be positive and different from 1, got {lam!r}")
    paths = [as_path_array(p) for p in path_sample]
    base = float(measure(paths))
    scaled = float(measure([lam * p for p in paths]))
    return HomogeneityWitness(base, scaled, lam * base, lam, base == 0.0)
