"""Sliding trend extraction and the quick-fluctuation test.

A KernelBank slides across the series; each aligned index carries the
kernel outputs on its trailing window, and the fluctuation is defined as
source minus trend there, so trend + fluctuation reconstructs the source
by construction. The oscillation score quantifies whether a fluctuation
averages out on every contiguous window of at least a minimum length.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .kernels import KernelBank
from .series_io import PriceSeries

QUICKLY_FLUCTUATING = "quickly_fluctuating"
NOT_QUICKLY_FLUCTUATING = "not_quickly_fluctuating"


@dataclass(frozen=True)
class Decomposition:
    """Aligned trend, derivative tracks, and fluctuation remainder.

    Arrays are compact: position a corresponds to source index a + warmup,
    warmup = W - 1, length n - W + 1. d1/d2 are None when the bank degree
    is too low to estimate them.
    """

    source: PriceSeries
    bank: KernelBank
    trend: np.ndarray
    d1: Optional[np.ndarray]
    d2: Optional[np.ndarray]
    fluctuation: np.ndarray
    warmup: int

    def __len__(self) -> int:
        return len(self.trend)

    def source_index(self, position: int) -> int:
        return position + self.warmup

    def position(self, source_index: int) -> int:
        """Aligned position for one source index; rejects warm-up indices."""
        pos = source_index - self.warmup
        if not 0 <= pos < len(self.trend):
            raise ValueError(
                f"source index {source_index} outside aligned range "
                f"{self.warmup}..{self.warmup + len(self.trend) - 1}"
            )
        return pos


@dataclass(frozen=True)
class OscillationReport:
    """Outcome of the windowed-mean oscillation test."""

    score: float
    scale: float
    min_window: int
    threshold: float
    verdict: str


def sliding_trend(series: PriceSeries, bank: KernelBank) -> Decomposition:
    """Apply a kernel bank across a series.

    Returns:
        Decomposition with trend/d1/d2 from the trailing window at each
        aligned index and fluctuation = source - trend pointwise.

    Raises:
        ValueError: series shorter than the bank window.
    """
    w = bank.spec.window
    values = series.values
    if len(values) < w:
        raise ValueError(f"series has {len(values)} samples, window needs {w}")

    def track(order: int) -> np.ndarray:
        # convolve flips its kernel; flip back so weight j hits offset j.
        out = np.convolve(values, bank.weights[order][::-1], mode="valid")
        out.setflags(write=False)
        return out

    degree = bank.spec.degree
    trend = track(0)
    d1 = track(1) if degree >= 1 else None
    d2 = track(2) if degree >= 2 else None
    # the correctly rounded difference; reconstruction is then exact up
    # to that single rounding (bit-for-bit whenever src - trend is
    # representable, within one ulp of the source otherwise).
    fluct = values[w - 1 :] - trend
    fluct.setflags(write=False)
    return Decomposition(
        source=series,
        bank=bank,
        trend=trend,
        d1=d1,
        d2=d2,
        fluctuation=fluct,
        warmup=w - 1,
    )


def oscillation_score(
    fluctuation: np.ndarray,
    min_window: int = 10,
    threshold: float = 0.05,
    source: Optional[PriceSeries] = None,
    stride: int = 1,
) -> OscillationReport:
    """Largest windowed mean of the fluctuation, relative to a scale.

    score = max over contiguous windows of length >= min_window of
    |window mean| / scale, scale = mean |source values| when a source is
    given, else 1. The verdict is quickly_fluctuating iff score <=
    threshold.

    Args:
        stride: evaluate windows whose start and end lie on this grid
            (1 = exhaustive; larger strides bound the score from below).
    """
    fluct = np.asarray(fluctuation, dtype=float)
    if fluct.ndim != 1 or len(fluct) == 0:
        raise ValueError("fluctuation must be a nonempty one-dimensional sequence")
    n = len(fluct)
    if not 1 <= min_window <= n:
        raise ValueError(f"min_window must be in 1..{n}, got {min_window}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")

    scale = float(np.mean(np.abs(source.values))) if source is not None else 1.0
    prefix = np.concatenate(([0.0], np.cumsum(fluct)))
    best = 0.0
    for start in range(0, n - min_window + 1, stride):
        ends = np.arange(start + min_window, n + 1, stride)
        means = np.abs(prefix[ends] - prefix[start]) / (ends - start)
        peak = float(means.max())
        if peak > best:
            best = peak
    score = best / scale
    verdict = QUICKLY_FLUCTUATING if score <= threshold else NOT_QUICKLY_FLUCTUATING
    return OscillationReport(
        score=score,
        scale=scale,
        min_window=min_window,
        threshold=threshold,
        verdict=verdict,
    )


def emit_decomposition(dec: Decomposition) -> str:
    """Aligned rows as delimiter-separated text for plotting."""
    lines = ["index,date,price,trend,d1,d2,fluctuation"]
    src = dec.source
    for a in range(len(dec)):
        i = dec.source_index(a)
        d1 = repr(float(dec.d1[a])) if dec.d1 is not None else ""
        d2 = repr(float(dec.d2[a])) if dec.d2 is not None else ""
        lines.append(
            f"{i},{src.date_label(i)},{float(src.values[i])!r},"
            f"{float(dec.trend[a])!r},{d1},{d2},{float(dec.fluctuation[a])!r}"
        )
    return "\n".join(lines) + "\n"
