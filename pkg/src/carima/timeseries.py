"""Date-indexed daily series, differencing transforms, range-based volatility,
and residual diagnostics.

All types are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.

The calendar is strictly daily with no gap tolerance: a series is a start
date plus a contiguous block of values, one per day. Gap handling belongs to
ingestion (see :mod:`carima.cli`), not here.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as sps

from .errors import (
    DegreesOfFreedomNonPositive,
    NegativeVariance,
    NonPositiveValue,
    SeriesTooShort,
)

__all__ = [
    "TimeSeries",
    "OhlcBar",
    "DifferenceOrders",
    "garman_klass",
    "log_transform",
    "difference",
    "integrate_effect",
    "differencing_polynomial",
    "acf",
    "pacf",
    "ljung_box",
    "qq_points",
]

# Unbiasedness correction for the range-based volatility proxy.
GK_CORRECTION = 1.034

_ONE_DAY = dt.timedelta(days=1)


@dataclass(frozen=True)
class TimeSeries:
    """A contiguous daily sequence of real values starting at ``start_date``.

    ``values`` is copied into a read-only float64 array; all values must be
    finite. Day ``i`` of the series falls on ``start_date + i`` days.
    """

    start_date: dt.date
    values: np.ndarray
    name: str = "y"

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("values must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise ValueError(
                f"non-finite value at {self.start_date + bad * _ONE_DAY} in {self.name!r}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def end_date(self) -> dt.date:
        """Date of the last observation."""
        return self.start_date + (len(self) - 1) * _ONE_DAY

    def dates(self) -> list[dt.date]:
        return [self.start_date + i * _ONE_DAY for i in range(len(self))]

    def index_of(self, date: dt.date) -> int:
        """Position of ``date``; raises KeyError when outside the range."""
        i = (date - self.start_date).days
        if not 0 <= i < len(self):
            raise KeyError(f"{date} outside series range "
                           f"[{self.start_date}, {self.end_date}]")
        return i

    def at(self, date: dt.date) -> float:
        return float(self.values[self.index_of(date)])

    def before(self, date: dt.date) -> "TimeSeries":
        """Strict pre-period: all observations with date < ``date``."""
        i = (date - self.start_date).days
        if i <= 0:
            raise SeriesTooShort(f"no observations before {date}")
        i = min(i, len(self))
        return TimeSeries(self.start_date, self.values[:i], self.name)

    def window(self, date: dt.date, k: int) -> "TimeSeries":
        """The ``k`` observations starting at ``date``."""
        i = self.index_of(date)
        if i + k > len(self):
            raise SeriesTooShort(
                f"window of {k} from {date} runs past {self.end_date}")
        return TimeSeries(date, self.values[i:i + k], self.name)

    def with_values(self, values, name: str | None = None) -> "TimeSeries":
        return TimeSeries(self.start_date, values,
                          self.name if name is None else name)


@dataclass(frozen=True)
class OhlcBar:
    """One day of open/high/low/close prices in a common currency unit."""

    date: dt.date
    open: float
    high: float
    low: float
    close: float

    def __post_init__(self):
        o, h, l, c = self.open, self.high, self.low, self.close
        if min(o, h, l, c) <= 0:
            raise ValueError(f"{self.date}: prices must be strictly positive")
        if l > min(o, c) or h < max(o, c):
            raise ValueError(
                f"{self.date}: require low <= min(open, close) and "
                f"high >= max(open, close)")


@dataclass(frozen=True)
class DifferenceOrders:
    """Regular order ``d``, seasonal order ``D`` and seasonal period ``s``."""

    d: int = 0
    D: int = 0
    s: int = 1

    def __post_init__(self):
        if self.d < 0 or self.D < 0:
            raise ValueError("differencing orders must be nonnegative")
        if self.s < 1:
            raise ValueError("seasonal period must be positive")
        if self.D > 0 and self.s < 2:
            raise ValueError("seasonal differencing requires s >= 2")

    @property
    def total_lag(self) -> int:
        """Observations consumed by one application of the operator."""
        return self.d + self.D * self.s


def garman_klass(bar: OhlcBar) -> float:
    """Daily volatility proxy from one OHLC bar.

    Computes the range-based variance
    ``0.5*(ln H - ln L)^2 - (2 ln 2 - 1)*(ln C - ln O)^2`` and returns its
    square root scaled by the 1.034 unbiasedness correction. Depends on
    price ratios only, so it is invariant to rescaling all four prices.

    Raises :class:`NegativeVariance` when an extreme close/open move paired
    with a tiny range drives the variance negative; the condition signals a
    data problem and is never clamped away.
    """
    hl = math.log(bar.high / bar.low)
    co = math.log(bar.close / bar.open)
    var = 0.5 * hl * hl - (2.0 * math.log(2.0) - 1.0) * co * co
    if var < 0.0:
        raise NegativeVariance(
            f"{bar.date}: range-based variance {var:.3e} < 0 "
            f"(O={bar.open} H={bar.high} L={bar.low} C={bar.close})")
    return math.sqrt(var) * GK_CORRECTION


def log_transform(ts: TimeSeries) -> TimeSeries:
    """Elementwise natural log; requires strictly positive values."""
    if np.any(ts.values <= 0.0):
        bad = int(np.flatnonzero(ts.values <= 0.0)[0])
        raise NonPositiveValue(
            f"{ts.name!r} has value {ts.values[bad]} <= 0 on "
            f"{ts.start_date + bad * _ONE_DAY}")
    return TimeSeries(ts.start_date, np.log(ts.values), ts.name + "_log")


def differencing_polynomial(ord: DifferenceOrders) -> np.ndarray:
    """Coefficients of ``(1 - L)^d (1 - L^s)^D`` in increasing powers of L."""
    poly = np.array([1.0])
    seasonal = np.zeros(ord.s + 1)
    seasonal[0], seasonal[-1] = 1.0, -1.0
    for _ in range(ord.D):
        poly = np.convolve(poly, seasonal)
    for _ in range(ord.d):
        poly = np.convolve(poly, [1.0, -1.0])
    return poly


def difference(ts: TimeSeries, ord: DifferenceOrders) -> TimeSeries:
    """Apply ``(1 - L^s)^D`` then ``(1 - L)^d``; output is shorter by
    ``d + D*s`` and starts that many days later."""
    if len(ts) <= ord.total_lag:
        raise SeriesTooShort(
            f"length {len(ts)} <= d + D*s = {ord.total_lag}")
    x = ts.values
    for _ in range(ord.D):
        x = x[ord.s:] - x[:-ord.s]
    for _ in range(ord.d):
        x = x[1:] - x[:-1]
    return TimeSeries(ts.start_date + ord.total_lag * _ONE_DAY, x, ts.name)


def integrate_effect(effect_on_transformed: TimeSeries,
                     ord: DifferenceOrders,
                     zero_initial: bool = True) -> TimeSeries:
    """Invert :func:`difference` under zero initial conditions.

    ``zero_initial`` asserts the effect is zero before the window starts,
    which pins every integration constant at zero. With the operator
    ``delta(L) = (1-L)^d (1-L^s)^D`` written as ``1 - pi(L)``, the output
    obeys ``y_t = x_t + sum_j pi_j y_{t-j}`` with ``y`` taken as zero before
    the first observation. Dates are unchanged.
    """
    if not zero_initial:
        raise ValueError("only zero initial conditions are supported; "
                         "pass zero_initial=True")
    return effect_on_transformed.with_values(
        integrate_values(effect_on_transformed.values, ord))


def integrate_values(x: np.ndarray, ord: DifferenceOrders) -> np.ndarray:
    """Array form of :func:`integrate_effect` (zero initial conditions)."""
    delta = differencing_polynomial(ord)
    if delta.size == 1:
        return np.asarray(x, dtype=np.float64).copy()
    pi = -delta[1:]
    y = np.zeros(len(x))
    for t in range(len(x)):
        acc = x[t]
        for j in range(1, min(t, len(pi)) + 1):
            acc += pi[j - 1] * y[t - j]
        y[t] = acc
    return y


def acf_values(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Array-level autocorrelations; see :func:`acf`."""
    x = np.asarray(x, dtype=np.float64)
    if max_lag >= x.size:
        raise SeriesTooShort(f"max_lag {max_lag} >= length {x.size}")
    x = x - x.mean()
    denom = float(x @ x)
    if denom == 0.0:
        # constant series: autocorrelation undefined, report zero dependence
        out = np.zeros(max_lag + 1)
        out[0] = 1.0
        return out
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    for k in range(1, max_lag + 1):
        out[k] = float(x[k:] @ x[:-k]) / denom
    return out


def pacf_values(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Array-level partial autocorrelations; see :func:`pacf`."""
    rho = acf_values(x, max_lag)
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    if max_lag == 0:
        return out
    phi_prev = np.zeros(0)
    for k in range(1, max_lag + 1):
        num = rho[k] - float(phi_prev @ rho[k - 1:0:-1]) if k > 1 else rho[1]
        den = 1.0 - float(phi_prev @ rho[1:k]) if k > 1 else 1.0
        alpha = num / den if den != 0.0 else 0.0
        phi = np.empty(k)
        phi[:k - 1] = phi_prev - alpha * phi_prev[::-1]
        phi[k - 1] = alpha
        out[k] = alpha
        phi_prev = phi
    return out


def acf(ts: TimeSeries, max_lag: int) -> np.ndarray:
    """Sample autocorrelations at lags ``0..max_lag`` (demeaned, biased
    normalization). ``acf[0]`` is exactly 1."""
    return acf_values(ts.values, max_lag)


def pacf(ts: TimeSeries, max_lag: int) -> np.ndarray:
    """Partial autocorrelations at lags ``0..max_lag`` via Durbin-Levinson;
    ``pacf[0] = 1`` by convention and ``pacf[1] == acf[1]``."""
    return pacf_values(ts.values, max_lag)


def ljung_box(residuals: TimeSeries, lags: int,
              fitted_params_count: int = 0) -> tuple[float, float]:
    """Ljung-Box portmanteau test of no residual autocorrelation.

    Returns ``(Q, p)`` where ``Q = n (n + 2) sum_k r_k^2 / (n - k)`` and the
    p-value comes from a chi-square with ``lags - fitted_params_count``
    degrees of freedom.
    """
    dof = lags - fitted_params_count
    if dof <= 0:
        raise DegreesOfFreedomNonPositive(
            f"lags ({lags}) must exceed fitted parameter count "
            f"({fitted_params_count})")
    n = len(residuals)
    r = acf(residuals, lags)[1:]
    q = float(n * (n + 2) * np.sum(r * r / (n - np.arange(1, lags + 1))))
    return q, float(sps.chi2.sf(q, dof))


def qq_points(residuals: TimeSeries) -> np.ndarray:
    """Normal Q-Q data: (theoretical quantile, sorted sample value) pairs.

    Theoretical quantiles are standard-Normal at plotting positions
    ``(i - 0.5) / n``; sample values are returned unstandardized.
    """
    x = np.sort(residuals.values)
    n = x.size
    theo = sps.norm.ppf((np.arange(1, n + 1) - 0.5) / n)
    return np.column_stack([theo, x])
