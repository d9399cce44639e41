"""Quantization of real-valued series and embedding-parameter suggestions.

Symbolization uses empirical quantiles of the series itself: the median for
binary output, or the k/alpha quantiles for alpha symbols.  The embedding lag
suggestion follows the usual heuristic of the first local minimum of the auto
mutual information curve, computed on the raw series with equal-count bins.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .lz import SymbolSequence

__all__ = [
    "RealSeries",
    "AMICurve",
    "LagSuggestion",
    "ConstantSeriesWarning",
    "DegenerateBinsWarning",
    "binarize_median",
    "quantize_quantiles",
    "auto_mutual_information",
    "suggest_lag",
    "suggest_embedding_dim",
]


class ConstantSeriesWarning(UserWarning):
    """The series has a single value; its binarization is all ones."""


class DegenerateBinsWarning(UserWarning):
    """Fewer distinct values than symbols; some quantile bins collapse."""


@dataclass(frozen=True)
class RealSeries:
    """A finite real-valued series, optionally with its sample period in seconds."""

    values: np.ndarray
    sample_period: float | None = None

    def __post_init__(self):
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if arr.size < 2:
            raise ValueError("series must hold at least two samples")
        if not np.all(np.isfinite(arr)):
            raise ValueError("series values must be finite")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class AMICurve:
    """Auto mutual information (nats) for lags 0..max_lag."""

    lags: np.ndarray
    mi_values: np.ndarray


@dataclass(frozen=True)
class LagSuggestion:
    """Suggested embedding lag.

    no_local_minimum is set when the curve has no interior strict minimum and
    the global minimum over positive lags was returned instead.
    """

    lag: int
    no_local_minimum: bool


def binarize_median(series: RealSeries) -> SymbolSequence:
    """Binarize against the median: symbol 1 where value >= median.

    A constant series binarizes to all ones and raises ConstantSeriesWarning.
    """
    values = series.values
    if np.all(values == values[0]):
        warnings.warn("constant series binarizes to all ones",
                      ConstantSeriesWarning, stacklevel=2)
    med = np.median(values)
    return SymbolSequence((values >= med).astype(np.int64), 2)


def quantize_quantiles(series: RealSeries, alpha: int) -> SymbolSequence:
    """Quantize into alpha symbols using the series' own quantile thresholds.

    Thresholds sit at the k/alpha empirical quantiles (linear interpolation),
    k = 1..alpha-1; symbol k covers the half-open bin between threshold k and
    k+1, so values at or above the last threshold map to alpha-1.  With fewer
    distinct values than symbols some bins collapse (DegenerateBinsWarning);
    the mapping stays total.
    """
    if alpha < 2:
        raise ValueError("alpha must be >= 2")
    values = series.values
    if values.size < alpha:
        raise ValueError("series shorter than the number of symbols")
    if np.unique(values).size < alpha:
        warnings.warn("fewer distinct values than symbols; degenerate bins",
                      DegenerateBinsWarning, stacklevel=2)
    return SymbolSequence(_quantile_symbols(values, alpha), alpha)


def _quantile_symbols(values: np.ndarray, k: int) -> np.ndarray:
    thresholds = np.quantile(values, np.arange(1, k) / k)
    return np.searchsorted(thresholds, values, side="right").astype(np.int64)


def auto_mutual_information(
    series: RealSeries, max_lag: int, bins: int = 16
) -> AMICurve:
    """Plug-in mutual information between the series and its lagged copy.

    The raw series is binned once into equal-count bins; for each lag the
    joint histogram of (value, lagged value) yields the plug-in MI in nats.
    Lag zero equals the plug-in entropy of the binned marginal.
    """
    values = series.values
    if bins < 2:
        raise ValueError("bins must be >= 2")
    if max_lag < 0 or max_lag >= values.size / 2:
        raise ValueError("max_lag must be below half the series length")
    b = _quantile_symbols(values, bins)
    mi = np.empty(max_lag + 1)
    for tau in range(max_lag + 1):
        b0 = b[: values.size - tau]
        b1 = b[tau:]
        joint = np.bincount(b0 * bins + b1, minlength=bins * bins)
        joint = joint / joint.sum()
        p = joint.reshape(bins, bins)
        marg0 = p.sum(axis=1)
        marg1 = p.sum(axis=0)
        denom = np.outer(marg0, marg1).ravel()
        nz = joint > 0
        # plug-in MI is a KL divergence, >= 0 up to rounding
        mi[tau] = max(float(np.sum(joint[nz] * np.log(joint[nz] / denom[nz]))), 0.0)
    return AMICurve(lags=np.arange(max_lag + 1), mi_values=mi)


def suggest_lag(curve: AMICurve) -> LagSuggestion:
    """First strict local minimum of the AMI curve, or its global minimum.

    Falls back to the global minimum over positive lags (flagged) when no
    interior lag satisfies mi[lag-1] > mi[lag] < mi[lag+1].
    """
    mi = curve.mi_values
    if mi.size < 3:
        raise ValueError("curve must cover at least three lags")
    for lag in range(1, mi.size - 1):
        if mi[lag - 1] > mi[lag] < mi[lag + 1]:
            return LagSuggestion(lag=int(curve.lags[lag]), no_local_minimum=False)
    best = 1 + int(np.argmin(mi[1:]))
    return LagSuggestion(lag=int(curve.lags[best]), no_local_minimum=True)


def suggest_embedding_dim(m_x: int, m_y: int) -> int:
    """Joint embedding dimension m_x + m_y + 1 for a pair of series."""
    if m_x < 1 or m_y < 1:
        raise ValueError("embedding dimensions must be >= 1")
    return m_x + m_y + 1
