"""Path-dependent risk analytics: drawdown magnitude, drawdown duration and
temporal risk measures built on them, plus an AR(1) Monte Carlo harness."""

from .errors import (ConfigError, DegenerateInputError, DomainError, ParseError,
                     PathRiskError, SizeError)
from .kernels import BACKEND
from .montecarlo import (Ar1Params, CorrelationConfig, CorrelationTable, KappaTableRow,
                         Regime, fit_ar1, kappa_correlation_experiment, kappa_table,
                         simulate_ar1)
from .pathmetrics import (DrawdownEpisode, drawdown, duration, episode_duration,
                          liquidation_stopping_time, max_drawdown, max_drawdown_episode,
                          max_duration, peak_time, running_max)
from .riskfunc import (deviation, expected_shortfall, pearson, quantile, skewness,
                       tail_mean, volatility)
from .series import (FULL, PathProcess, ReturnSeries, WindowSpec, parse_returns_csv,
                     path_from_returns, rolling_windows)
from .temporal import (EPISODE_DURATION, MAX_DURATION, AxiomReport, HomogeneityWitness,
                       PathSampleMeasure, RiskReport, TemporalTransform, ced,
                       check_temporal_axioms, conditional_expected_duration,
                       duration_deviation, duration_quantile, homogeneity_witness,
                       liquidation_time, risk_report)

__version__ = "0.1.0"
