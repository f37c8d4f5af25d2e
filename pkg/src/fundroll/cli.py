"""Command-line front end: fit, optimize, calibrate, backtest.

Exit codes: 0 success, 2 usage, 3 parse error, 4 data gap, 5 config error,
1 anything else. Currency-level work runs concurrently and every output
file is written atomically.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import date

from .backtest import run_backtest
from .calibrate import ParameterGrid, calibrate
from .config import RunConfig, load_config
from .curves import CurveHistory, fit_linear
from .data_io import (
    BPS_FORMAT,
    RATE_FORMAT,
    load_history_csv,
    write_json,
    write_rows_csv,
)
from .errors import ConfigError, DataGapError, FundingError, ParseError
from .measures import (
    constant_provider,
    ewma_gradient,
    ewma_provider,
    pi_provider,
    q_provider,
    refine_gradient,
)
from .optimize import optimal_roll, roll_cost_curve
from .schedule import alpha_grid

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 3
EXIT_DATA_GAP = 4
EXIT_CONFIG = 5

MEASURES = ("Q", "P-CONST", "P-EWMA", "PI")


def _load_histories(config: RunConfig, only: str | None = None) -> dict[str, CurveHistory]:
    wanted = dict(config.data_paths)
    if only is not None:
        key = only.upper()
        if key not in wanted:
            raise ConfigError(f"currency {only} not in config data section")
        wanted = {key: wanted[key]}
    with ThreadPoolExecutor(max_workers=max(1, len(wanted))) as pool:
        loaded = dict(zip(wanted, pool.map(load_history_csv, wanted.values())))
    return loaded


def _provider_for(measure: str, config: RunConfig, history: CurveHistory, day: date):
    curve = history.curve_at(day)
    if measure == "Q":
        return q_provider(curve)
    if measure == "P-CONST":
        return constant_provider(curve)
    if measure == "P-EWMA":
        past = history.truncated(day)
        g_raw = ewma_gradient(past.short_rates(), config.params.lam)
        forecast = refine_gradient(
            g_raw, config.params, curve.short_rate, round(365.0 * config.setup.h)
        )
        return ewma_provider(curve, forecast)
    if measure == "PI":
        return pi_provider(history, day)
    raise ConfigError(f"unknown measure {measure}; choose from {', '.join(MEASURES)}")


def cmd_fit(config: RunConfig, currency: str | None) -> int:
    histories = _load_histories(config, currency)
    rows = []
    for ccy in sorted(histories):
        hist = histories[ccy]
        r2s = []
        log_ps = []
        for curve in hist.entries:
            _, diag = fit_linear(curve)
            r2s.append(diag.r_squared)
            log_ps.append(math.log(diag.p_value))
        mean_r2 = sum(r2s) / len(r2s)
        geo_p = math.exp(sum(log_ps) / len(log_ps))
        rows.append((ccy, str(len(hist)), f"{mean_r2:.4f}", f"{geo_p:.6e}"))
    header = ("currency", "n_curves", "mean_r_squared", "geomean_p_value")
    out_path = config.output_dir / "fit_diagnostics.csv"
    write_rows_csv(out_path, header, rows)
    print(",".join(header))
    for row in rows:
        print(",".join(row))
    print(f"wrote {out_path}", file=sys.stderr)
    return EXIT_OK


def cmd_optimize(config: RunConfig, currency: str, day: date, measure: str) -> int:
    histories = _load_histories(config, currency)
    ccy = currency.upper()
    history = histories[ccy]
    provider = _provider_for(measure, config, history, day)
    alphas = alpha_grid(config.setup, config.alpha_grid_step_days)
    result = optimal_roll(provider, config.setup, alphas)
    curve_points = roll_cost_curve(provider, config.setup, alphas)
    payload = {
        "currency": ccy,
        "date": day.isoformat(),
        "measure": measure,
        "alpha_star": round(result.alpha_star, 10),
        "cost": round(result.cost, 10),
        "classification": result.classification,
        "n_ties": len(result.tie_set),
        "cost_curve": [
            [round(c.alpha, 10), round(c.cav, 10)] for c in curve_points
        ],
    }
    out_path = config.output_dir / f"optimize_{ccy}_{day.isoformat()}_{measure}.json"
    write_json(out_path, payload)
    print(json.dumps(payload, indent=2, sort_keys=True))
    print(f"wrote {out_path}", file=sys.stderr)
    return EXIT_OK


def cmd_calibrate(config: RunConfig) -> int:
    histories = _load_histories(config)
    windows = config.calibration_windows(histories)
    result = calibrate(
        histories,
        config.setup,
        windows,
        ParameterGrid.default(),
        alpha_step_days=config.alpha_grid_step_days,
    )
    payload = {
        "params": {
            "lambda_days": round(result.params.lam * 365.0, 6),
            "theta_per_day": result.params.theta,
            "omega": result.params.omega,
        },
        "objective_bps": round(result.objective * 1e4, 2),
        "objective": result.objective,
        "per_currency_bps": {
            ccy: round(v * 1e4, 2) for ccy, v in result.per_currency.items()
        },
        "grid_evaluations": result.grid_evaluations,
    }
    out_path = config.output_dir / "calibration.json"
    write_json(out_path, payload)
    print(json.dumps(payload, indent=2, sort_keys=True))
    print(f"wrote {out_path}", file=sys.stderr)
    return EXIT_OK


def _backtest_one(
    config: RunConfig, ccy: str, history: CurveHistory, hac_lags: int | None
) -> dict:
    window = config.backtest_window(history)
    alphas = alpha_grid(config.setup, config.alpha_grid_step_days)
    report = run_backtest(
        history, config.setup, config.params, window, alphas=alphas, hac_lags=hac_lags
    )
    rows = []
    for i, day in enumerate(report.dates):
        q = report.q_cost[i]
        e = report.ewma_cost[i]
        v = report.evpi_cost[i]
        rows.append(
            (
                day.isoformat(),
                RATE_FORMAT.format(q),
                RATE_FORMAT.format(e),
                RATE_FORMAT.format(v),
                RATE_FORMAT.format(report.ewma_alpha[i]),
                RATE_FORMAT.format(q - e),
                RATE_FORMAT.format(e - v),
            )
        )
    header = (
        "date",
        "q_cost",
        "ewma_cost",
        "evpi_cost",
        "ewma_alpha",
        "q_minus_ewma",
        "ewma_minus_evpi",
    )
    series_path = config.output_dir / f"backtest_{ccy}.csv"
    write_rows_csv(series_path, header, rows)
    s = report.summary
    summary = {
        "currency": ccy,
        "n_dates": s.n_dates,
        "window": [window[0].isoformat(), window[1].isoformat()],
        "mean_q_vs_ewma_bps": round(s.mean_q_vs_ewma_bps, 2),
        "mean_ewma_vs_evpi_bps": round(s.mean_ewma_vs_evpi_bps, 2),
        "t_stat": s.t_stat,
        "p_value": s.p_value,
        "efficiency_pct": None if s.efficiency_pct is None else round(s.efficiency_pct, 1),
    }
    write_json(config.output_dir / f"backtest_{ccy}_summary.json", summary)
    return summary


def cmd_backtest(config: RunConfig, currency: str | None, hac_lags: int | None) -> int:
    histories = _load_histories(config, currency)
    items = sorted(histories.items())
    with ThreadPoolExecutor(max_workers=max(1, len(items))) as pool:
        summaries = list(
            pool.map(lambda kv: _backtest_one(config, kv[0], kv[1], hac_lags), items)
        )
    write_json(config.output_dir / "backtest_summary.json", summaries)
    cols = ("currency", "q_vs_ewma_bps", "ewma_vs_evpi_bps", "p_value", "efficiency_pct")
    print(",".join(cols))
    for s in summaries:
        eff = "n/a" if s["efficiency_pct"] is None else BPS_FORMAT.format(s["efficiency_pct"])
        p = "n/a" if s["p_value"] is None else f"{s['p_value']:.3e}"
        print(
            f"{s['currency']},{BPS_FORMAT.format(s['mean_q_vs_ewma_bps'])},"
            f"{BPS_FORMAT.format(s['mean_ewma_vs_evpi_bps'])},{p},{eff}"
        )
    print(f"wrote {config.output_dir}/backtest_summary.json", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fund",
        description="Funding-roll optimization under a regulatory liquidity buffer",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="path to INI config file")

    p_fit = sub.add_parser("fit", help="straight-line fit diagnostics per currency")
    add_common(p_fit)
    p_fit.add_argument("--currency", help="restrict to one currency")

    p_opt = sub.add_parser("optimize", help="optimal roll for one curve and measure")
    add_common(p_opt)
    p_opt.add_argument("--currency", required=True)
    p_opt.add_argument("--date", required=True, help="curve observation date (ISO)")
    p_opt.add_argument("--measure", default="Q", choices=MEASURES)

    p_cal = sub.add_parser("calibrate", help="grid-search predictor parameters")
    add_common(p_cal)

    p_bt = sub.add_parser("backtest", help="walk-forward strategy comparison")
    add_common(p_bt)
    p_bt.add_argument("--currency", help="restrict to one currency")
    p_bt.add_argument(
        "--hac-lags",
        type=int,
        default=None,
        help="report an autocorrelation-robust t-test with this many lags",
    )

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.command == "fit":
            return cmd_fit(config, args.currency)
        if args.command == "optimize":
            try:
                day = date.fromisoformat(args.date)
            except ValueError as exc:
                raise ConfigError(f"--date: {exc}") from exc
            return cmd_optimize(config, args.currency, day, args.measure)
        if args.command == "calibrate":
            return cmd_calibrate(config)
        if args.command == "backtest":
            return cmd_backtest(config, args.currency, args.hac_lags)
        raise ConfigError(f"unknown command {args.command}")
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DataGapError as exc:
        print(f"data gap: {exc}", file=sys.stderr)
        return EXIT_DATA_GAP
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FundingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
