"""Seeded AR(1) simulation and fitting, and the serial-correlation experiments.

Random numbers come from numpy's PCG64 seeded through ``SeedSequence``.
Substreams for a given (seed, index) pair are derived by SeedSequence's hash
of the spawn key, so results do not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from . import riskfunc as rf
from .errors import ConfigError, DegenerateInputError, DomainError
from .series import ReturnSeries, WindowSpec, path_from_returns
from .temporal import Window, ced, conditional_expected_duration

SIGMA_EPS = 0.1  # innovation variance 0.01


@dataclass(frozen=True)
class Ar1Params:
    kappa: float
    sigma_eps: float = SIGMA_EPS

    def __post_init__(self):
        if not abs(self.kappa) < 1.0:
            raise DomainError(f"|kappa| must be < 1 for a stationary AR(1), got {self.kappa!r}")
        if not self.sigma_eps >= 0.0 or not math.isfinite(self.sigma_eps):
            raise DomainError(f"sigma_eps must be finite and >= 0, got {self.sigma_eps!r}")

    @property
    def stationary_sd(self) -> float:
        return self.sigma_eps / math.sqrt(1.0 - self.kappa ** 2)


def _check_seed(seed):
    if int(seed) != seed or not 0 <= seed < 2 ** 64:
        raise DomainError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def rng(seed: int, *index: int) -> np.random.Generator:
    """Generator for substream ``index`` of ``seed``."""
    seq = np.random.SeedSequence(_check_seed(seed), spawn_key=tuple(int(i) for i in index))
    return np.random.Generator(np.random.PCG64(seq))


def ar1_filter(kappas, z) -> np.ndarray:
    """Run r_t = kappa_t r_{t-1} + eps_t over standard normals ``z`` (times sigma).

    ``z[0]`` seeds r_0 from the stationary law of the first regime.
    """
    kappas = np.broadcast_to(np.asarray(kappas, dtype=np.float64), z.shape)
    out = np.empty_like(z)
    if len(z) == 0:
        return out
    r = z[0] / math.sqrt(1.0 - kappas[0] ** 2)
    out[0] = r
    # plain loop: the recursion is inherently sequential and n is modest
    for t in range(1, len(z)):
        r = kappas[t] * r + z[t]
        out[t] = r
    return out


def simulate_ar1(params: Ar1Params, n: int, seed: int, periods_per_year: int = 252,
                 stream: int = 0) -> ReturnSeries:
    """n returns of r_t = kappa r_{t-1} + eps_t, eps ~ N(0, sigma_eps^2).

    r_0 is drawn from the stationary N(0, sigma_eps^2 / (1 - kappa^2)). The
    draws are treated as log returns so the path is their running sum.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    z = rng(seed, stream).standard_normal(int(n)) * params.sigma_eps
    values = ar1_filter(params.kappa, z)
    labels = tuple(str(i + 1) for i in range(int(n)))
    return ReturnSeries(values, labels, periods_per_year, log_returns=True)


def fit_ar1(returns) -> float:
    """Conditional Gaussian MLE of kappa without intercept (least squares through 0)."""
    r = np.asarray(getattr(returns, "values", returns), dtype=np.float64)
    if len(r) < 3:
        raise DegenerateInputError(f"fitting an AR(1) needs at least 3 returns, got {len(r)}")
    lag, lead = r[:-1], r[1:]
    denom = float(lag @ lag)
    if denom == 0.0:
        raise DegenerateInputError("lagged returns are all zero; kappa is not identified")
    return float(lead @ lag) / denom


# -- kappa sweep --------------------------------------------------------------

@dataclass(frozen=True)
class KappaTableRow:
    kappa: float
    volatility: float
    expected_shortfall: float
    ced: float
    conditional_expected_duration: float
    alpha: float
    window: object
    n: int


def kappa_table(kappas: Sequence[float], n: int = 10_000, seed: int = 0, alpha: float = 0.9,
                spec: Window = WindowSpec(180), sigma_eps: float = SIGMA_EPS,
                common_innovations: bool = True) -> list[KappaTableRow]:
    """Volatility, ES, CED and Conditional Expected Duration for each kappa.

    With ``common_innovations`` every kappa is driven by the same innovation
    stream (substream 0), so differences between rows reflect kappa alone.
    Otherwise row i uses substream i.
    """
    params = [Ar1Params(k, sigma_eps) for k in kappas]
    rows = []
    for i, p in enumerate(params):
        returns = simulate_ar1(p, n, seed, stream=0 if common_innovations else i)
        rows.append(KappaTableRow(
            kappa=p.kappa,
            volatility=rf.volatility(returns),
            expected_shortfall=rf.expected_shortfall(returns, alpha),
            ced=ced(returns, spec, alpha),
            conditional_expected_duration=conditional_expected_duration(returns, spec, alpha),
            alpha=alpha,
            window=spec if isinstance(spec, str) else spec.length,
            n=n,
        ))
    return rows


# -- rolling kappa-hat correlation --------------------------------------------

@dataclass(frozen=True)
class Regime:
    kappa: float
    length: int


@dataclass(frozen=True)
class CorrelationConfig:
    """Regime-switching AR(1) and the rolling windows used to correlate kappa-hat.

    Each metric window yields kappa-hat, volatility and ES directly; CED and
    Conditional Expected Duration come from the sample of sub-path windows
    lying inside the metric window.
    """

    regimes: tuple
    sigma_eps: float = SIGMA_EPS
    metric_window: int = 126
    sub_window: int = 21
    stride: int = 1
    alpha: float = 0.9
    seed: int = 0

    def __post_init__(self):
        regimes = tuple(r if isinstance(r, Regime) else Regime(*r) for r in self.regimes)
        object.__setattr__(self, "regimes", regimes)
        if not regimes:
            raise ConfigError("regime schedule is empty")
        for r in regimes:
            Ar1Params(r.kappa, self.sigma_eps)
            if int(r.length) != r.length or r.length < 1:
                raise ConfigError(f"regime length must be a positive integer, got {r.length!r}")
        if self.sub_window < 2:
            raise ConfigError("sub-path length must be >= 2")
        if self.metric_window < self.sub_window:
            raise ConfigError(
                f"metric window {self.metric_window} is shorter than the sub-path {self.sub_window}")
        if self.total_length < self.metric_window:
            raise ConfigError(
                f"schedule covers {self.total_length} periods, fewer than one metric window "
                f"of {self.metric_window}")
        if self.stride < 1:
            raise ConfigError("stride must be >= 1")

    @property
    def total_length(self) -> int:
        return sum(r.length for r in self.regimes)

    @classmethod
    def alternating(cls, kappas=(0.1, 0.8), regime_length=2000, n_regimes=10, **kw):
        regimes = tuple(Regime(kappas[i % len(kappas)], regime_length) for i in range(n_regimes))
        return cls(regimes, **kw)


@dataclass(frozen=True)
class CorrelationTable:
    volatility: float
    expected_shortfall: float
    ced: float
    conditional_expected_duration: float
    n_windows: int
    series: dict = field(repr=False, default_factory=dict)

    def correlations(self) -> dict:
        return {
            "volatility": self.volatility,
            "expected_shortfall": self.expected_shortfall,
            "ced": self.ced,
            "conditional_expected_duration": self.conditional_expected_duration,
        }


def simulate_regimes(config: CorrelationConfig) -> ReturnSeries:
    kappas = np.concatenate([np.full(r.length, r.kappa) for r in config.regimes])
    z = rng(config.seed, 0).standard_normal(len(kappas)) * config.sigma_eps
    values = ar1_filter(kappas, z)
    labels = tuple(str(i + 1) for i in range(len(values)))
    return ReturnSeries(values, labels, log_returns=True)


def _safe_pearson(a, b):
    try:
        return rf.pearson(a, b)
    except DomainError:
        return float("nan")


def kappa_correlation_experiment(config: CorrelationConfig,
                                 returns: Optional[ReturnSeries] = None) -> CorrelationTable:
    """Correlate rolling kappa-hat with rolling volatility, ES, CED and CE-duration.

    ``returns`` overrides the simulated regime series (e.g. to run the same
    analysis on observed data). A correlation is NaN when one of its series
    has zero deviation.
    """
    if returns is None:
        returns = simulate_regimes(config)
    r = np.asarray(returns.values)
    m, w = config.metric_window, config.sub_window
    if len(r) < m:
        raise ConfigError(f"{len(r)} returns are fewer than one metric window of {m}")
    alpha = config.alpha

    # sub-path statistics once over the whole series; window j covers returns j..j+w-1
    sub_mdd, sub_mdur = kernels.window_extremes(path_from_returns(returns).values, w, 1)
    sub_mdur = sub_mdur.astype(np.float64)
    per_metric = m - w + 1

    starts = range(0, len(r) - m + 1, config.stride)
    k_hat, vol, es, ced_s, ce_s = (np.empty(len(starts)) for _ in range(5))
    scale = math.sqrt(returns.periods_per_year)
    for i, s in enumerate(starts):
        chunk = r[s:s + m]
        lag = chunk[:-1]
        denom = float(lag @ lag)
        k_hat[i] = float(chunk[1:] @ lag) / denom if denom > 0 else 0.0
        vol[i] = float(np.std(chunk, ddof=1)) * scale
        es[i] = rf.tail_mean(-chunk, alpha)
        ced_s[i] = rf.tail_mean(sub_mdd[s:s + per_metric], alpha)
        ce_s[i] = rf.tail_mean(sub_mdur[s:s + per_metric], alpha)

    return CorrelationTable(
        volatility=_safe_pearson(k_hat, vol),
        expected_shortfall=_safe_pearson(k_hat, es),
        ced=_safe_pearson(k_hat, ced_s),
        conditional_expected_duration=_safe_pearson(k_hat, ce_s),
        n_windows=len(starts),
        series={"kappa_hat": k_hat, "volatility": vol, "expected_shortfall": es,
                "ced": ced_s, "conditional_expected_duration": ce_s},
    )
