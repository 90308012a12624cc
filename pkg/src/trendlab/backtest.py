"""Walk-forward evaluation of position forecasts over a price history.

At each origin the pipeline forecasts the trend (slow bank), the price
(fast bank), and the fluctuation std (slow bank over the moment track),
calls a position inside the deadband rule, and scores it against the
realized sign of price minus the retrospective slow trend at the target
date. Percentages, forecast errors, band coverage, and the std track's
heteroscedasticity are aggregated per horizon.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from math import sqrt
from typing import Sequence

import numpy as np

from . import forecast as fc
from .decompose import sliding_trend
from .kernels import EstimatorSpec, build_kernel_bank
from .moments import moment_tracks
from .series_io import PriceSeries


@dataclass(frozen=True)
class BacktestConfig:
    """Experiment grid and estimator settings for one backtest."""

    horizons: tuple[int, ...] = (1, 5)
    spec_slow: EstimatorSpec = EstimatorSpec(degree=2, window=21)
    spec_fast: EstimatorSpec = EstimatorSpec(degree=2, window=7)
    M: int = 100
    level: float = 0.95
    deadband_rule: float = 0.1

    def __post_init__(self) -> None:
        if len(self.horizons) == 0:
            raise ValueError("horizons must be nonempty")
        if any((not isinstance(h, int)) or h < 1 for h in self.horizons):
            raise ValueError(f"horizons must be integers >= 1, got {self.horizons!r}")
        if not isinstance(self.M, int) or self.M < 1:
            raise ValueError(f"M must be an integer >= 1, got {self.M!r}")
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must be inside (0, 1), got {self.level!r}")
        if self.deadband_rule < 0:
            raise ValueError(f"deadband_rule must be >= 0, got {self.deadband_rule!r}")

    def min_samples(self) -> int:
        """Smallest series length with at least one scorable origin."""
        w = self.spec_slow.window
        return 2 * (w - 1) + self.M + max(self.horizons) + 1


@dataclass(frozen=True)
class HorizonResult:
    """Aggregates for one forecast horizon."""

    horizon: int
    exact_pct: float
    nodecision_pct: float
    wrong_pct: float
    rmse: float
    coverage: float
    het_ratio: float
    origins: int
    skipped: int


@dataclass(frozen=True)
class BacktestReport:
    """Per-horizon results plus the run's identifying settings."""

    series_name: str
    samples: int
    config: BacktestConfig
    results: tuple[HorizonResult, ...]


def score_positions(
    predictions: Sequence[str], realized: Sequence[str]
) -> tuple[float, float, float]:
    """Percentages (exact, nodecision, wrong) over all origins.

    Raises:
        ValueError: length mismatch, empty input, or a realized entry
            that is not above/under.
    """
    if len(predictions) != len(realized):
        raise ValueError(
            f"length mismatch: {len(predictions)} predictions, {len(realized)} realized"
        )
    if len(predictions) == 0:
        raise ValueError("nothing to score")
    exact = nodecision = wrong = 0
    for pred, real in zip(predictions, realized):
        if real not in (fc.ABOVE, fc.UNDER):
            raise ValueError(f"realized positions must be above/under, got {real!r}")
        if pred == fc.NO_DECISION:
            nodecision += 1
        elif pred == real:
            exact += 1
        elif pred in (fc.ABOVE, fc.UNDER):
            wrong += 1
        else:
            raise ValueError(f"unknown prediction {pred!r}")
    total = len(predictions)
    return 100.0 * exact / total, 100.0 * nodecision / total, 100.0 * wrong / total


def walk_forward(series: PriceSeries, config: BacktestConfig) -> BacktestReport:
    """Run the forecast pipeline at every valid origin and score it.

    Estimator specs are rebuilt on the series' own spacing. Origins start
    at 2*(W_slow - 1) + M, the first index where the slow bank, the
    moment window, and a slow-bank window over the std track all fit.

    Raises:
        ValueError: series shorter than config.min_samples().
    """
    n = len(series)
    need = config.min_samples()
    if n < need:
        raise ValueError(f"series too short: need at least {need} samples, got {n}")

    spec_slow = replace(config.spec_slow, spacing=series.spacing)
    spec_fast = replace(config.spec_fast, spacing=series.spacing)
    slow = sliding_trend(series, build_kernel_bank(spec_slow))
    fast = sliding_trend(series, build_kernel_bank(spec_fast))
    track = moment_tracks(slow.fluctuation, config.M)

    w = spec_slow.window
    t_min = 2 * (w - 1) + config.M
    prices = series.values
    results = []
    for h in config.horizons:
        predictions: list[str] = []
        realized: list[str] = []
        sq_err = 0.0
        covered = 0
        stds: list[float] = []
        skipped = 0
        for t in range(t_min, n - h):
            try:
                point = fc.forecast_point(
                    slow, fast, track, t, h,
                    level=config.level, deadband_mult=config.deadband_rule,
                )
            except ValueError:
                skipped += 1
                continue
            target = float(prices[t + h])
            fluct_at_target = float(slow.fluctuation[t + h - slow.warmup])
            realized.append(fc.ABOVE if fluct_at_target > 0 else fc.UNDER)
            predictions.append(point.position)
            sq_err += (point.trend_hat - target) ** 2
            covered += int(point.lo <= target <= point.hi)
            stds.append(float(track.std[t - slow.warmup - track.warmup]))
        if not predictions:
            raise ValueError(f"no scorable origins at horizon {h}")
        exact, nodecision, wrong = score_positions(predictions, realized)
        count = len(predictions)
        std_min, std_max = min(stds), max(stds)
        results.append(
            HorizonResult(
                horizon=h,
                exact_pct=exact,
                nodecision_pct=nodecision,
                wrong_pct=wrong,
                rmse=sqrt(sq_err / count),
                coverage=covered / count,
                het_ratio=(std_max / std_min) if std_min > 0 else float("inf"),
                origins=count,
                skipped=skipped,
            )
        )
    return BacktestReport(
        series_name=series.name,
        samples=n,
        config=config,
        results=tuple(results),
    )


def emit_report(report: BacktestReport, format: str = "text") -> str:
    """Render a report as a human table or as flat key=value lines."""
    if format not in ("text", "structured"):
        raise ValueError(f"format must be 'text' or 'structured', got {format!r}")
    cfg = report.config
    if format == "structured":
        lines = [
            f"series={report.series_name}",
            f"samples={report.samples}",
            f"slow_window={cfg.spec_slow.window}",
            f"fast_window={cfg.spec_fast.window}",
            f"degree={cfg.spec_slow.degree}",
            f"smoothing={cfg.spec_slow.smoothing}",
            f"moment_window={cfg.M}",
            f"level={cfg.level!r}",
            f"deadband_mult={cfg.deadband_rule!r}",
        ]
        for r in report.results:
            p = f"h{r.horizon}"
            lines += [
                f"{p}.exact_pct={r.exact_pct!r}",
                f"{p}.nodecision_pct={r.nodecision_pct!r}",
                f"{p}.wrong_pct={r.wrong_pct!r}",
                f"{p}.rmse={r.rmse!r}",
                f"{p}.coverage={r.coverage!r}",
                f"{p}.het_ratio={r.het_ratio!r}",
                f"{p}.origins={r.origins}",
                f"{p}.skipped={r.skipped}",
            ]
        return "\n".join(lines) + "\n"
    lines = [
        f"walk-forward backtest: {report.series_name} ({report.samples} samples)",
        f"slow window {cfg.spec_slow.window}, fast window {cfg.spec_fast.window}, "
        f"degree {cfg.spec_slow.degree}, moment window {cfg.M}, "
        f"level {cfg.level}, deadband {cfg.deadband_rule} x std",
        "",
        "horizon  exact%   nodec%   wrong%     rmse  coverage  het_ratio  origins  skipped",
    ]
    for r in report.results:
        lines.append(
            f"{r.horizon:7d}  {r.exact_pct:6.2f}  {r.nodecision_pct:7.2f}  "
            f"{r.wrong_pct:7.2f}  {r.rmse:7.3f}  {r.coverage:8.3f}  "
            f"{r.het_ratio:9.3f}  {r.origins:7d}  {r.skipped:7d}"
        )
    return "\n".join(lines) + "\n"
