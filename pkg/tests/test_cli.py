"""Command-line entry points: outputs, exit codes, and atomicity."""
import numpy as np
import pytest

from conftest import write_price_csv
from trendlab.cli import main


def read_kv(path):
    return dict(
        line.split("=", 1)
        for line in path.read_text().strip().splitlines()
        if "=" in line
    )


@pytest.fixture
def noisy_csv(tmp_path):
    rng = np.random.default_rng(19)
    i = np.arange(300)
    values = 60.0 + 5.0 * np.sin(2.0 * np.pi * i / 125.0) + rng.normal(0.0, 0.5, 300)
    return write_price_csv(tmp_path / "prices.csv", values)


class TestDecompose:
    def test_outputs_written(self, noisy_csv, tmp_path, capsys):
        rc = main([
            "decompose", "--input", str(noisy_csv), "--out-dir", str(tmp_path),
        ])
        assert rc == 0
        csv_path = tmp_path / "prices_decomposition.csv"
        kv_path = tmp_path / "prices_oscillation.kv"
        assert csv_path.exists() and kv_path.exists()
        out = capsys.readouterr().out
        assert str(csv_path) in out and str(kv_path) in out

    def test_rows_reconstruct_price(self, noisy_csv, tmp_path):
        main(["decompose", "--input", str(noisy_csv), "--out-dir", str(tmp_path)])
        lines = (tmp_path / "prices_decomposition.csv").read_text().strip().splitlines()
        assert lines[0] == "index,date,price,trend,d1,d2,fluctuation"
        assert len(lines) == 1 + 300 - 20
        for line in lines[1:]:
            parts = line.split(",")
            assert float(parts[3]) + float(parts[6]) == pytest.approx(
                float(parts[2]), abs=1e-9
            )

    def test_constant_prices_have_zero_fluctuation(self, tmp_path):
        path = write_price_csv(tmp_path / "flat.csv", np.full(60, 5.0))
        main(["decompose", "--input", str(path), "--out-dir", str(tmp_path)])
        lines = (tmp_path / "flat_decomposition.csv").read_text().strip().splitlines()
        fluct = np.array([float(line.split(",")[6]) for line in lines[1:]])
        assert np.max(np.abs(fluct)) <= 1e-9

    def test_oscillation_kv_fields(self, noisy_csv, tmp_path):
        main(["decompose", "--input", str(noisy_csv), "--out-dir", str(tmp_path)])
        kv = read_kv(tmp_path / "prices_oscillation.kv")
        assert kv["series"] == "prices"
        assert int(kv["samples"]) == 300
        assert float(kv["score"]) >= 0.0
        assert kv["verdict"] in ("quickly_fluctuating", "not_quickly_fluctuating")

    def test_window_flag_changes_alignment(self, noisy_csv, tmp_path):
        main([
            "decompose", "--input", str(noisy_csv), "--window", "11",
            "--out-dir", str(tmp_path),
        ])
        lines = (tmp_path / "prices_decomposition.csv").read_text().strip().splitlines()
        assert len(lines) == 1 + 300 - 10
        assert lines[1].split(",")[0] == "10"


class TestMoments:
    def test_moments_csv(self, noisy_csv, tmp_path):
        rc = main(["moments", "--input", str(noisy_csv), "--out-dir", str(tmp_path)])
        assert rc == 0
        lines = (tmp_path / "prices_moments.csv").read_text().strip().splitlines()
        assert lines[0] == "index,date,std,skew,kurt"
        # 300 samples - slow warm-up 20 - moment warm-up 100
        assert len(lines) == 1 + 180
        first = lines[1].split(",")
        assert first[0] == "120"
        assert first[1] == "2020-04-30"
        assert float(first[2]) > 0.0


class TestForecast:
    def test_forecast_csv(self, noisy_csv, tmp_path):
        rc = main(["forecast", "--input", str(noisy_csv), "--out-dir", str(tmp_path)])
        assert rc == 0
        lines = (tmp_path / "prices_forecast.csv").read_text().strip().splitlines()
        assert lines[0] == "date,horizon,trend_hat,lo,hi,position"
        assert len(lines) == 1 + 2 * (300 - 140)
        for line in lines[1:]:
            _, h, trend_hat, lo, hi, position = line.split(",")
            assert h in ("1", "5")
            assert float(lo) <= float(trend_hat) <= float(hi)
            assert position in ("above", "under", "no_decision")

    def test_horizons_flag(self, noisy_csv, tmp_path):
        main([
            "forecast", "--input", str(noisy_csv), "--horizons", "2",
            "--out-dir", str(tmp_path),
        ])
        lines = (tmp_path / "prices_forecast.csv").read_text().strip().splitlines()
        assert len(lines) == 1 + (300 - 140)
        assert all(line.split(",")[1] == "2" for line in lines[1:])


class TestBacktest:
    def test_reports_written(self, noisy_csv, tmp_path):
        rc = main(["backtest", "--input", str(noisy_csv), "--out-dir", str(tmp_path)])
        assert rc == 0
        text = (tmp_path / "prices_backtest.txt").read_text()
        assert "exact%" in text
        kv = read_kv(tmp_path / "prices_backtest.kv")
        total = (
            float(kv["h1.exact_pct"])
            + float(kv["h1.nodecision_pct"])
            + float(kv["h1.wrong_pct"])
        )
        assert total == pytest.approx(100.0, abs=1e-9)
        assert int(kv["slow_window"]) == 21

    def test_too_short_series_fails_cleanly(self, tmp_path, capsys):
        path = write_price_csv(tmp_path / "short.csv", np.full(50, 5.0) + np.arange(50))
        rc = main(["backtest", "--input", str(path), "--out-dir", str(tmp_path)])
        assert rc == 2
        err = capsys.readouterr().err
        assert err.startswith("error:") and "series too short" in err
        assert not (tmp_path / "short_backtest.txt").exists()
        assert not (tmp_path / "short_backtest.kv").exists()


class TestGbm:
    def test_stats_kv(self, tmp_path):
        rc = main([
            "gbm", "--steps", "200", "--paths", "400", "--seed", "5",
            "--out-dir", str(tmp_path),
        ])
        assert rc == 0
        kv = read_kv(tmp_path / "gbm_stats.kv")
        assert float(kv["mu"]) == 0.05
        assert float(kv["sigma"]) == 0.2
        assert int(kv["paths"]) == 400
        assert int(kv["seed"]) == 5
        assert 0.0 <= float(kv["p_hat"]) <= 1.0
        assert kv["generator"] == "pcg64-inverse-transform-ndtri"
        assert kv["verdict"] in ("quickly_fluctuating", "not_quickly_fluctuating")

    def test_zero_volatility_verdict(self, tmp_path):
        main([
            "gbm", "--sigma", "0", "--steps", "100", "--paths", "50",
            "--out-dir", str(tmp_path),
        ])
        kv = read_kv(tmp_path / "gbm_stats.kv")
        assert float(kv["p_hat"]) == 0.0
        assert kv["verdict"] == "quickly_fluctuating"


class TestErrorHandling:
    def test_missing_input_file(self, tmp_path, capsys):
        rc = main([
            "decompose", "--input", str(tmp_path / "nope.csv"),
            "--out-dir", str(tmp_path),
        ])
        assert rc == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_bad_price_file(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("Date,Close\n2021-01-01,10\n2021-01-02,-3\n")
        rc = main(["decompose", "--input", str(path), "--out-dir", str(tmp_path)])
        assert rc == 2
        assert "non-positive price" in capsys.readouterr().err

    def test_unknown_flag_exits_nonzero(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["decompose", "--frobnicate"])
        assert exc.value.code == 2

    def test_missing_subcommand_exits_nonzero(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_invalid_spec_flag_combination(self, noisy_csv, tmp_path, capsys):
        rc = main([
            "decompose", "--input", str(noisy_csv), "--window", "3",
            "--out-dir", str(tmp_path),
        ])
        assert rc == 2
        assert "underdetermined" in capsys.readouterr().err


class TestDeterminism:
    def test_decompose_runs_are_byte_identical(self, noisy_csv, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        a.mkdir()
        b.mkdir()
        for out in (a, b):
            main(["decompose", "--input", str(noisy_csv), "--out-dir", str(out)])
        for name in ("prices_decomposition.csv", "prices_oscillation.kv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()
