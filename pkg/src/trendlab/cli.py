"""Command-line entry point wiring the full pipeline.

One executable with subcommands (decompose, moments, forecast, backtest,
gbm). Every output is computed fully before anything is written, and
each file is written atomically (temp file + rename), so failures leave
no partial outputs. Given identical inputs, flags, and seed, outputs are
byte-identical across runs.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import replace
from typing import Optional, Sequence

from . import __version__
from .backtest import BacktestConfig, emit_report, walk_forward
from .decompose import emit_decomposition, oscillation_score, sliding_trend
from .forecast import forecast_point
from .gbm import NORMAL_SOURCE, GbmParams, oscillation_probability
from .kernels import EstimatorSpec, build_kernel_bank
from .moments import emit_moments, moment_tracks
from .series_io import load_prices


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_all(out_dir: str, outputs: dict[str, str]) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for filename, text in outputs.items():
        path = os.path.join(out_dir, filename)
        _write_atomic(path, text)
        written.append(path)
    return written


def _horizon_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"horizons must be comma-separated integers, got {text!r}") from exc


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", required=True, help="price file (delimiter-separated text with header)")
    sub.add_argument("--date-col", default="Date", help="date column name (ISO-8601 dates)")
    sub.add_argument("--price-col", default="Close", help="price column name (currency units)")


def _add_kernel_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--window", type=int, default=21, help="slow estimator window W (samples)")
    sub.add_argument("--degree", type=int, default=2, help="polynomial order N of the local model")
    sub.add_argument("--smoothing", type=int, default=1, help="extra integration count kappa (>= 1)")


def _add_forecast_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--fast-window", type=int, default=7, help="fast price-estimator window (samples)")
    sub.add_argument("--moment-window", type=int, default=100, help="moment window M (samples)")
    sub.add_argument("--horizons", type=_horizon_list, default=(1, 5), help="forecast horizons (days, comma-separated)")
    sub.add_argument("--level", type=float, default=0.95, help="confidence level for the band, in (0, 1)")
    sub.add_argument("--deadband-mult", type=float, default=0.1, help="deadband as a multiple of predicted std")


def _slow_spec(args: argparse.Namespace) -> EstimatorSpec:
    return EstimatorSpec(degree=args.degree, window=args.window, smoothing=args.smoothing)


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _cmd_decompose(args: argparse.Namespace) -> list[str]:
    series = load_prices(args.input, date_col=args.date_col, price_col=args.price_col)
    bank = build_kernel_bank(_slow_spec(args))
    dec = sliding_trend(series, bank)
    report = oscillation_score(
        dec.fluctuation,
        min_window=args.oscillation_min_window,
        threshold=args.oscillation_threshold,
        source=series,
    )
    kv = (
        f"series={series.name}\n"
        f"samples={len(series)}\n"
        f"window={bank.spec.window}\n"
        f"degree={bank.spec.degree}\n"
        f"smoothing={bank.spec.smoothing}\n"
        f"score={report.score!r}\n"
        f"scale={report.scale!r}\n"
        f"min_window={report.min_window}\n"
        f"threshold={report.threshold!r}\n"
        f"verdict={report.verdict}\n"
    )
    stem = _stem(args.input)
    return _emit_all(args.out_dir, {
        f"{stem}_decomposition.csv": emit_decomposition(dec),
        f"{stem}_oscillation.kv": kv,
    })


def _cmd_moments(args: argparse.Namespace) -> list[str]:
    series = load_prices(args.input, date_col=args.date_col, price_col=args.price_col)
    bank = build_kernel_bank(_slow_spec(args))
    dec = sliding_trend(series, bank)
    track = moment_tracks(dec.fluctuation, args.moment_window)
    text = emit_moments(track, dates=series.dates, offset=dec.warmup)
    stem = _stem(args.input)
    return _emit_all(args.out_dir, {f"{stem}_moments.csv": text})


def _cmd_forecast(args: argparse.Namespace) -> list[str]:
    series = load_prices(args.input, date_col=args.date_col, price_col=args.price_col)
    slow_bank = build_kernel_bank(_slow_spec(args))
    fast_bank = build_kernel_bank(replace(_slow_spec(args), window=args.fast_window))
    slow = sliding_trend(series, slow_bank)
    fast = sliding_trend(series, fast_bank)
    track = moment_tracks(slow.fluctuation, args.moment_window)
    t_min = 2 * (slow_bank.spec.window - 1) + args.moment_window
    n = len(series)
    if t_min >= n:
        raise ValueError(f"series too short: need at least {t_min + 1} samples, got {n}")
    lines = ["date,horizon,trend_hat,lo,hi,position"]
    for h in args.horizons:
        for t in range(t_min, n):
            point = forecast_point(
                slow, fast, track, t, h,
                level=args.level, deadband_mult=args.deadband_mult,
            )
            lines.append(
                f"{series.date_label(t)},{h},{point.trend_hat!r},"
                f"{point.lo!r},{point.hi!r},{point.position}"
            )
    stem = _stem(args.input)
    return _emit_all(args.out_dir, {f"{stem}_forecast.csv": "\n".join(lines) + "\n"})


def _cmd_backtest(args: argparse.Namespace) -> list[str]:
    series = load_prices(args.input, date_col=args.date_col, price_col=args.price_col)
    config = BacktestConfig(
        horizons=args.horizons,
        spec_slow=_slow_spec(args),
        spec_fast=replace(_slow_spec(args), window=args.fast_window),
        M=args.moment_window,
        level=args.level,
        deadband_rule=args.deadband_mult,
    )
    report = walk_forward(series, config)
    stem = _stem(args.input)
    return _emit_all(args.out_dir, {
        f"{stem}_backtest.txt": emit_report(report, "text"),
        f"{stem}_backtest.kv": emit_report(report, "structured"),
    })


def _cmd_gbm(args: argparse.Namespace) -> list[str]:
    params = GbmParams(
        mu=args.mu, sigma=args.sigma, s0=args.s0, t_end=args.t_end,
        steps=args.steps, paths=args.paths, seed=args.seed,
    )
    stat = oscillation_probability(params, args.epsilon)
    verdict = (
        "quickly_fluctuating" if stat.p_hat <= args.oscillation_threshold
        else "not_quickly_fluctuating"
    )
    kv = (
        f"mu={params.mu!r}\n"
        f"sigma={params.sigma!r}\n"
        f"s0={params.s0!r}\n"
        f"t_end={params.t_end!r}\n"
        f"steps={params.steps}\n"
        f"paths={params.paths}\n"
        f"seed={params.seed}\n"
        f"epsilon={stat.epsilon!r}\n"
        f"p_hat={stat.p_hat!r}\n"
        f"stderr={stat.stderr!r}\n"
        f"threshold={args.oscillation_threshold!r}\n"
        f"verdict={verdict}\n"
        f"generator={NORMAL_SOURCE}\n"
    )
    return _emit_all(args.out_dir, {"gbm_stats.kv": kv})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trendlab",
        description="Trend extraction, fluctuation statistics, forecasting, "
        "backtesting, and GBM oscillation tests for price series.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = subs.add_parser("decompose", formatter_class=fmt,
                        help="split prices into trend + fluctuation and test the remainder")
    _add_input_flags(p)
    _add_kernel_flags(p)
    p.add_argument("--oscillation-min-window", type=int, default=10,
                   help="smallest averaging window L_min (samples)")
    p.add_argument("--oscillation-threshold", type=float, default=0.05,
                   help="quick-fluctuation verdict threshold (fraction of scale)")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.set_defaults(func=_cmd_decompose)

    p = subs.add_parser("moments", formatter_class=fmt,
                        help="rolling std/skew/kurt tracks of the fluctuation")
    _add_input_flags(p)
    _add_kernel_flags(p)
    p.add_argument("--moment-window", type=int, default=100, help="moment window M (samples)")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.set_defaults(func=_cmd_moments)

    p = subs.add_parser("forecast", formatter_class=fmt,
                        help="per-origin trend forecasts, bands, and position calls")
    _add_input_flags(p)
    _add_kernel_flags(p)
    _add_forecast_flags(p)
    p.add_argument("--out-dir", default=".", help="output directory")
    p.set_defaults(func=_cmd_forecast)

    p = subs.add_parser("backtest", formatter_class=fmt,
                        help="walk-forward scoring of position forecasts")
    _add_input_flags(p)
    _add_kernel_flags(p)
    _add_forecast_flags(p)
    p.add_argument("--out-dir", default=".", help="output directory")
    p.set_defaults(func=_cmd_backtest)

    p = subs.add_parser("gbm", formatter_class=fmt,
                        help="Monte Carlo oscillation test of geometric Brownian motion")
    p.add_argument("--mu", type=float, default=0.05, help="drift (per unit time)")
    p.add_argument("--sigma", type=float, default=0.2, help="volatility (per sqrt(time))")
    p.add_argument("--s0", type=float, default=1.0, help="initial price (currency units)")
    p.add_argument("--t-end", type=float, default=1.0, help="horizon T (time units)")
    p.add_argument("--steps", type=int, default=1000, help="grid steps on [0, T]")
    p.add_argument("--paths", type=int, default=10000, help="ensemble size")
    p.add_argument("--epsilon", type=float, default=0.05, help="residual integral threshold")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--oscillation-threshold", type=float, default=0.05,
                   help="p_hat at or below this counts as quickly fluctuating")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.set_defaults(func=_cmd_gbm)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        written = args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
