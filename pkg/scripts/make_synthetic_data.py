#!/usr/bin/env python3
"""Generate synthetic weekly curve histories and a ready-to-run config.

Licensed interbank-rate data cannot be bundled, so this script fabricates
four currencies with distinct personalities (random walks, a late crash, a
long easing cycle) covering 18 years, plus the deterministic two-regime
stress fixture. Output lands under data/synth/ next to a demo.ini that the
`fund` CLI consumes directly.
"""

from __future__ import annotations

import argparse
from datetime import date
from pathlib import Path

from fundroll.data_io import write_history_csv
from fundroll.synthetic import random_walk_history, two_regime_history

START = date(1995, 1, 6)
WEEKS = 18 * 52

CONFIG_TEMPLATE = """\
[setup]
horizon_years = 1.0
buffer_years = 0.08333333333333333
phi = 0.75

[data]
C1 = C1.csv
C2 = C2.csv
C3 = C3.csv
C4 = C4.csv

[calibration]
years = 5

[predictor]
lambda_days = 90
theta_per_day = 0.005
omega = 0.3

[run]
alpha_grid_step_days = 1
output_dir = ../../out
"""


def build_histories():
    return {
        "C1": random_walk_history(seed=101, weeks=WEEKS, start=START, level0=0.05, slope0=0.012),
        "C2": random_walk_history(seed=202, weeks=WEEKS, start=START, level0=0.03, slope0=0.008),
        "C3": two_regime_history(
            start=START,
            weeks=WEEKS,
            level_high=0.06,
            level_low=0.02,
            drop_start_week=700,
            drop_weeks=30,
        ),
        "C4": random_walk_history(seed=404, weeks=WEEKS, start=START, level0=0.04, slope0=0.02),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--output-dir", type=Path, default=Path("data/synth"), help="target directory"
    )
    args = parser.parse_args()
    out = args.output_dir
    out.mkdir(parents=True, exist_ok=True)
    for ccy, hist in build_histories().items():
        path = out / f"{ccy}.csv"
        write_history_csv(hist, path)
        print(f"wrote {path} ({len(hist)} weeks)")
    fixture = two_regime_history()
    write_history_csv(fixture, out / "two_regime_fixture.csv")
    print(f"wrote {out / 'two_regime_fixture.csv'} ({len(fixture)} weeks)")
    config_path = out / "demo.ini"
    config_path.write_text(CONFIG_TEMPLATE)
    print(f"wrote {config_path}")


if __name__ == "__main__":
    main()
