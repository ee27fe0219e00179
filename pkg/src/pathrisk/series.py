"""Return series, cumulative log paths, and rolling-window extraction."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO, Union

import numpy as np

from .errors import DomainError, ParseError, SizeError

FULL = "full"


def _frozen(values, dtype=np.float64):
    arr = np.array(values, dtype=dtype).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """Per-period returns in file order.

    ``values`` are simple returns unless ``log_returns`` is set, in which case
    they are already log returns and are summed directly into the path (the
    form the AR(1) simulator produces, where a draw below -1 is legitimate).
    """

    values: np.ndarray
    labels: Optional[tuple] = None
    periods_per_year: int = 252
    log_returns: bool = False

    def __post_init__(self):
        values = _frozen(self.values)
        object.__setattr__(self, "values", values)
        if not np.all(np.isfinite(values)):
            raise DomainError("returns must be finite")
        if not self.log_returns and np.any(values <= -1.0):
            bad = int(np.flatnonzero(values <= -1.0)[0])
            raise DomainError(
                f"return {values[bad]!r} at position {bad} is <= -1; the log path is undefined"
            )
        if self.labels is not None:
            labels = tuple(str(lab) for lab in self.labels)
            if len(labels) != len(values):
                raise DomainError(
                    f"{len(labels)} labels for {len(values)} returns"
                )
            object.__setattr__(self, "labels", labels)
        if int(self.periods_per_year) != self.periods_per_year or self.periods_per_year < 1:
            raise DomainError("periods_per_year must be a positive integer")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, item: slice) -> "ReturnSeries":
        if not isinstance(item, slice):
            raise TypeError("ReturnSeries supports slicing only")
        labels = None if self.labels is None else self.labels[item]
        return ReturnSeries(self.values[item], labels, self.periods_per_year, self.log_returns)

    def log_values(self) -> np.ndarray:
        if self.log_returns:
            return np.asarray(self.values)
        return np.log1p(self.values)


@dataclass(frozen=True, eq=False)
class PathProcess:
    """Cumulative log-value path X_0..X_T with X_0 = 0."""

    values: np.ndarray
    origin_label: Optional[str] = None

    def __post_init__(self):
        values = _frozen(self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 1:
            raise DomainError("a path has at least the origin value")
        if values[0] != 0.0:
            raise DomainError(f"path must start at 0, got {values[0]!r}")
        if not np.all(np.isfinite(values)):
            raise DomainError("path values must be finite")

    def __len__(self):
        return len(self.values)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    @property
    def horizon(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class WindowSpec:
    length: int
    stride: int = 1

    def __post_init__(self):
        if int(self.length) != self.length or self.length < 2:
            raise DomainError(f"window length must be an integer >= 2, got {self.length!r}")
        if int(self.stride) != self.stride or self.stride < 1:
            raise DomainError(f"window stride must be an integer >= 1, got {self.stride!r}")

    def count(self, n_returns: int) -> int:
        """Number of windows over ``n_returns`` periods (0 if none fits)."""
        if n_returns < self.length:
            return 0
        return (n_returns - self.length) // self.stride + 1


def parse_returns_csv(text: Union[str, TextIO, Iterable[str]], source: Optional[str] = None,
                      periods_per_year: int = 252) -> ReturnSeries:
    """Read a ``date,return`` CSV into a ReturnSeries.

    A ``date,log_return`` header is also accepted and yields a series of log
    returns. Errors carry the 1-based line number of the offending row.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input: expected header 'date,return'", line=1, source=source)
    header = [h.strip().lower() for h in header]
    if header and header[0].startswith("\ufeff"):
        header[0] = header[0][1:]
    if header == ["date", "return"]:
        log_returns = False
    elif header == ["date", "log_return"]:
        log_returns = True
    else:
        raise ParseError(f"expected header 'date,return', got {','.join(header)!r}",
                         line=1, source=source)

    labels, values = [], []
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 columns, got {len(row)}", line=line, source=source)
        label, raw = row[0].strip(), row[1].strip()
        try:
            value = float(raw)
        except ValueError:
            raise ParseError(f"non-numeric return {raw!r}", line=line, source=source) from None
        if not math.isfinite(value):
            raise ParseError(f"non-finite return {raw!r}", line=line, source=source)
        if not log_returns and value <= -1.0:
            raise DomainError(
                f"{source + ':' if source else ''}{line}: return {value!r} is <= -1"
            )
        labels.append(label)
        values.append(value)
    return ReturnSeries(values, tuple(labels), periods_per_year, log_returns)


def format_returns_csv(returns: ReturnSeries) -> str:
    column = "log_return" if returns.log_returns else "return"
    labels = returns.labels or tuple(str(i + 1) for i in range(len(returns)))
    lines = [f"date,{column}"]
    lines += [f"{lab},{val!r}" for lab, val in zip(labels, returns.values.tolist())]
    return "\n".join(lines) + "\n"


def path_from_returns(returns: ReturnSeries) -> PathProcess:
    """Cumulative log path: X_0 = 0, X_t = sum of log(1 + r_i) for i <= t."""
    values = np.empty(len(returns) + 1)
    values[0] = 0.0
    np.cumsum(returns.log_values(), out=values[1:])
    origin = None
    if returns.labels:
        origin = returns.labels[0]
    return PathProcess(values, origin)


def window_starts(n_returns: int, spec: WindowSpec) -> range:
    if spec.length > n_returns:
        raise SizeError(
            f"window length {spec.length} exceeds the {n_returns} available returns",
            required=spec.length, available=n_returns,
        )
    return range(0, n_returns - spec.length + 1, spec.stride)


def rebase(values: np.ndarray) -> np.ndarray:
    return values - values[0]


def rolling_windows(returns: ReturnSeries, spec: WindowSpec) -> list[PathProcess]:
    """One rebased path per window start 0, stride, 2*stride, ...

    Windows are cut from the full-history path and shifted to start at 0, so a
    window's values are bit-identical to what the rolling kernels see.
    """
    starts = window_starts(len(returns), spec)
    full = path_from_returns(returns).values
    labels = returns.labels
    out = []
    for s in starts:
        origin = labels[s] if labels else None
        out.append(PathProcess(rebase(full[s:s + spec.length + 1]), origin))
    return out


def as_path_array(path: Union[PathProcess, Sequence[float], np.ndarray]) -> np.ndarray:
    """Coerce a path-like value to a 1-D float array (origin need not be 0)."""
    arr = np.asarray(path, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("a path is a nonempty one-dimensional sequence")
    if not np.all(np.isfinite(arr)):
        raise DomainError("path values must be finite")
    return arr
