"""Run configuration: INI-style file with sections, documented in README.

Every default matches the standard setup: one-year horizon, one-month
buffer, bid-ask fraction 0.75, five calibration years, and predictor
parameters (90-day decay, 0.005/day threshold, 0.3 scaling). Units are
explicit in key names (years/days/per-day) to avoid ambiguity.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .curves import CurveHistory, add_years
from .errors import ConfigError
from .measures import PredictorParams
from .schedule import FundingSetup

DEFAULT_HORIZON_YEARS = 1.0
DEFAULT_BUFFER_YEARS = 1.0 / 12.0
DEFAULT_PHI = 0.75
DEFAULT_CALIBRATION_YEARS = 5.0
DEFAULT_LAMBDA_DAYS = 90.0
DEFAULT_THETA_PER_DAY = 0.005
DEFAULT_OMEGA = 0.3
DEFAULT_ALPHA_STEP_DAYS = 1


@dataclass
class RunConfig:
    """Everything a CLI command needs: problem constants, data, windows."""

    setup: FundingSetup
    data_paths: dict[str, Path]
    calibration_years: float = DEFAULT_CALIBRATION_YEARS
    calibration_window: tuple[date, date] | None = None
    params: PredictorParams = field(
        default_factory=lambda: PredictorParams(
            lam=DEFAULT_LAMBDA_DAYS / 365.0,
            theta=DEFAULT_THETA_PER_DAY,
            omega=DEFAULT_OMEGA,
        )
    )
    alpha_grid_step_days: int = DEFAULT_ALPHA_STEP_DAYS
    output_dir: Path = Path("out")

    def calibration_windows(
        self, histories: dict[str, CurveHistory]
    ) -> dict[str, tuple[date, date]]:
        """Per-currency calibration window: the explicit one if configured,
        otherwise the first `calibration_years` of each history."""
        windows = {}
        for ccy, hist in histories.items():
            if self.calibration_window is not None:
                windows[ccy] = self.calibration_window
            else:
                windows[ccy] = (hist.start, add_years(hist.start, self.calibration_years))
        return windows

    def backtest_window(self, history: CurveHistory) -> tuple[date, date]:
        """Out-of-sample window: after the calibration span, leaving a full
        horizon of data ahead."""
        if self.calibration_window is not None:
            start = self.calibration_window[1]
        else:
            start = add_years(history.start, self.calibration_years)
        end = add_years(history.end, -self.setup.h)
        return (start, end)


def _get_float(section, key: str, default: float) -> float:
    try:
        return section.getfloat(key, fallback=default)
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {key}: {exc}") from exc


def _get_int(section, key: str, default: int) -> int:
    try:
        return section.getint(key, fallback=default)
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {key}: {exc}") from exc


def _get_date(section, key: str) -> date | None:
    raw = section.get(key, fallback=None)
    if raw is None:
        return None
    try:
        return date.fromisoformat(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {key}: {exc}") from exc


def load_config(path: str | Path) -> RunConfig:
    """Parse a config file; see README for the full key reference."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        with open(path) as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    setup_sec = parser["setup"] if parser.has_section("setup") else parser["DEFAULT"]
    try:
        setup = FundingSetup(
            h=_get_float(setup_sec, "horizon_years", DEFAULT_HORIZON_YEARS),
            delta=_get_float(setup_sec, "buffer_years", DEFAULT_BUFFER_YEARS),
            phi=_get_float(setup_sec, "phi", DEFAULT_PHI),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: invalid [setup]: {exc}") from exc

    if not parser.has_section("data") or not parser.options("data"):
        raise ConfigError(f"{path}: [data] section with currency = csv-path entries required")
    data_paths: dict[str, Path] = {}
    missing = []
    for ccy in parser.options("data"):
        p = Path(parser.get("data", ccy))
        if not p.is_absolute():
            p = path.parent / p
        if not p.exists():
            missing.append(str(p))
        data_paths[ccy.upper()] = p
    if missing:
        raise ConfigError(f"{path}: data files not found: {', '.join(missing)}")

    calibration_years = DEFAULT_CALIBRATION_YEARS
    calibration_window = None
    if parser.has_section("calibration"):
        cal = parser["calibration"]
        calibration_years = _get_float(cal, "years", DEFAULT_CALIBRATION_YEARS)
        w_start = _get_date(cal, "start")
        w_end = _get_date(cal, "end")
        if (w_start is None) != (w_end is None):
            raise ConfigError(f"{path}: [calibration] start and end must be given together")
        if w_start is not None and w_end is not None:
            if w_end <= w_start:
                raise ConfigError(f"{path}: [calibration] end must be after start")
            calibration_window = (w_start, w_end)

    lam_days = DEFAULT_LAMBDA_DAYS
    theta = DEFAULT_THETA_PER_DAY
    omega = DEFAULT_OMEGA
    if parser.has_section("predictor"):
        pred = parser["predictor"]
        lam_days = _get_float(pred, "lambda_days", DEFAULT_LAMBDA_DAYS)
        theta = _get_float(pred, "theta_per_day", DEFAULT_THETA_PER_DAY)
        omega = _get_float(pred, "omega", DEFAULT_OMEGA)
    try:
        params = PredictorParams(lam=lam_days / 365.0, theta=theta, omega=omega)
    except ValueError as exc:
        raise ConfigError(f"{path}: invalid [predictor]: {exc}") from exc

    step_days = DEFAULT_ALPHA_STEP_DAYS
    output_dir = Path("out")
    if parser.has_section("run"):
        run = parser["run"]
        step_days = _get_int(run, "alpha_grid_step_days", DEFAULT_ALPHA_STEP_DAYS)
        if step_days < 1:
            raise ConfigError(f"{path}: [run] alpha_grid_step_days must be >= 1")
        out_raw = run.get("output_dir", fallback=None)
        if out_raw:
            output_dir = Path(out_raw)
            if not output_dir.is_absolute():
                output_dir = path.parent / output_dir

    return RunConfig(
        setup=setup,
        data_paths=data_paths,
        calibration_years=calibration_years,
        calibration_window=calibration_window,
        params=params,
        alpha_grid_step_days=step_days,
        output_dir=output_dir,
    )
