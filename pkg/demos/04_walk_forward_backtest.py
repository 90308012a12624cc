"""Walk-forward evaluation of position forecasts.

Scores above/under calls against realized positions on a synthetic series
whose trend is genuinely recoverable, first with the default slow window
and then with a window tuned to the cycle length.

    python3 demos/04_walk_forward_backtest.py
"""
from dataclasses import replace

import numpy as np

from trendlab import BacktestConfig, EstimatorSpec, PriceSeries, emit_report, walk_forward


def main() -> None:
    rng = np.random.default_rng(7)
    i = np.arange(1500)
    values = 50.0 + 10.0 * np.sin(2.0 * np.pi * i / 250.0) + rng.normal(0.0, 1.0, 1500)
    series = PriceSeries("synthetic", values)

    default_cfg = BacktestConfig()
    print("default slow window (21):")
    print(emit_report(walk_forward(series, default_cfg)))
    print("a window much shorter than the 250-sample cycle tracks the noise")
    print("as faithfully as the trend, so exactness hovers near chance.\n")

    tuned_cfg = replace(
        default_cfg, spec_slow=EstimatorSpec(degree=2, window=121)
    )
    print("tuned slow window (121, about half the cycle):")
    print(emit_report(walk_forward(series, tuned_cfg)))
    print("now the cycle lives in the trend and the calls carry real skill;")
    print("h=5 degrades against h=1 as the horizon outruns the local model.")


if __name__ == "__main__":
    main()
