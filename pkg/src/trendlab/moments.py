"""Rolling central moments of the fluctuation and derived shape tracks.

Every value is a trailing-window statistic over M+1 samples: the window
mean is removed first, then centered k-th powers are averaged with
denominator M+1 (no bias correction). std, skewness, and kurtosis follow
as sqrt(MA_2), MA_3 / MA_2^(3/2), and MA_4 / MA_2^2; windows with zero
variance carry no skew/kurt value and are flagged undefined.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

_CHUNK_ROWS = 8192


@dataclass(frozen=True)
class MomentTrack:
    """Rolling moment tracks; position p corresponds to fluctuation index
    p + warmup, warmup = M, length n - M."""

    M: int
    mean_track: np.ndarray
    ma2: np.ndarray
    ma3: np.ndarray
    ma4: np.ndarray
    std: np.ndarray
    skew: np.ndarray
    kurt: np.ndarray
    defined: np.ndarray  # where MA_2 > 0, so skew/kurt carry values
    warmup: int

    def __len__(self) -> int:
        return len(self.std)


def _rolling_stats(fluct: np.ndarray, m: int, ks: tuple[int, ...]) -> dict[int, np.ndarray]:
    """Trailing-window mean and central moments, mean-first arithmetic.

    Chunked windowed evaluation; each window reduces over a contiguous
    axis, matching per-window recomputation bit for bit.
    """
    n = len(fluct)
    out = {0: np.empty(n - m)}
    for k in ks:
        out[k] = np.empty(n - m)
    windows = sliding_window_view(fluct, m + 1)
    for lo in range(0, n - m, _CHUNK_ROWS):
        hi = min(lo + _CHUNK_ROWS, n - m)
        block = windows[lo:hi]
        mean = block.mean(axis=1)
        centered = block - mean[:, None]
        out[0][lo:hi] = mean
        for k in ks:
            out[k][lo:hi] = (centered**k).sum(axis=1) / (m + 1)
    return out


def rolling_central_moment(fluctuation: np.ndarray, k: int, M: int) -> np.ndarray:
    """Trailing rolling k-th central moment.

    Value at track position p (fluctuation index p + M) is
    sum_{tau=0..M} (fluct(p+M-tau) - mean)^k / (M+1), the mean taken over
    the same M+1 samples.

    Raises:
        ValueError: k < 2, M < 1, or sequence shorter than M+1.
    """
    fluct = np.asarray(fluctuation, dtype=float)
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"M must be an integer >= 1, got {M!r}")
    if fluct.ndim != 1 or len(fluct) < M + 1:
        raise ValueError(f"need at least M+1 = {M + 1} samples, got {len(fluct)}")
    return _rolling_stats(fluct, M, (k,))[k]


def moment_tracks(fluctuation: np.ndarray, M: int = 100) -> MomentTrack:
    """Rolling std/skew/kurt tracks of a fluctuation sequence.

    Raises:
        ValueError: M < 1 or sequence shorter than M+1.
    """
    fluct = np.asarray(fluctuation, dtype=float)
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"M must be an integer >= 1, got {M!r}")
    if fluct.ndim != 1 or len(fluct) < M + 1:
        raise ValueError(f"need at least M+1 = {M + 1} samples, got {len(fluct)}")

    stats = _rolling_stats(fluct, M, (2, 3, 4))
    mean_track, ma2, ma3, ma4 = stats[0], stats[2], stats[3], stats[4]
    # MA_2 is a mean of squares, so it is >= 0 in float arithmetic too.
    defined = ma2 > 0.0
    std = np.sqrt(ma2)
    skew = np.full_like(ma2, np.nan)
    kurt = np.full_like(ma2, np.nan)
    np.divide(ma3, ma2**1.5, out=skew, where=defined)
    np.divide(ma4, ma2**2, out=kurt, where=defined)
    for arr in (mean_track, ma2, ma3, ma4, std, skew, kurt, defined):
        arr.setflags(write=False)
    return MomentTrack(
        M=M,
        mean_track=mean_track,
        ma2=ma2,
        ma3=ma3,
        ma4=ma4,
        std=std,
        skew=skew,
        kurt=kurt,
        defined=defined,
        warmup=M,
    )


def emit_moments(track: MomentTrack, dates: tuple[str, ...] | None = None, offset: int = 0) -> str:
    """Track rows as delimiter-separated text.

    Args:
        dates: source date labels; row p uses dates[p + offset + warmup].
        offset: source index of fluctuation position 0 (the trend warmup
            when the fluctuation came from a decomposition).
    """
    lines = ["index,date,std,skew,kurt"]
    for p in range(len(track)):
        i = p + track.warmup + offset
        label = dates[i] if dates is not None else str(i)
        skew = repr(float(track.skew[p])) if track.defined[p] else ""
        kurt = repr(float(track.kurt[p])) if track.defined[p] else ""
        lines.append(f"{i},{label},{float(track.std[p])!r},{skew},{kurt}")
    return "\n".join(lines) + "\n"
