"""Treasury funding-roll optimization under a regulatory liquidity buffer.

A desk that must always hold at least a buffer's worth of forward funding
cannot let positions run off: rolls overlap, and the overlap stub is sold at
a bid-ask haircut. This package chooses the roll length that minimizes the
expected average funding cost over a horizon, under several measures of
"expected", and backtests the choices on historical curve data.
"""

from .backtest import (
    BacktestReport,
    BacktestSummary,
    TTestResult,
    efficiency,
    newey_west_t_test,
    paired_t_test,
    run_backtest,
)
from .calibrate import CalibrationResult, ParameterGrid, calibrate
from .config import RunConfig, load_config
from .cost import CostResult, CurveProvider, cav, cav_linear, realized_cost
from .curves import (
    CurveHistory,
    FitDiagnostics,
    LinearCurve,
    SpotCurve,
    add_years,
    fit_linear,
    forward_rate,
    years_between,
    zero_rate,
)
from .errors import (
    BufferViolationError,
    ConfigError,
    DataGapError,
    DegenerateSampleError,
    FundingError,
    InsufficientDataError,
    MeasureError,
    ParseError,
)
from .measures import (
    PredictorParams,
    ShiftForecast,
    constant_provider,
    ewma_gradient,
    ewma_provider,
    pi_provider,
    q_provider,
    refine_gradient,
)
from .optimize import OptimalRoll, evpi_roll, optimal_roll, roll_cost_curve
from .schedule import (
    FundingSetup,
    RollEvent,
    RollSchedule,
    alpha_grid,
    build_schedule,
    gross_excess,
    n_rolls,
)

__version__ = "0.1.0"

__all__ = [
    "BacktestReport",
    "BacktestSummary",
    "BufferViolationError",
    "CalibrationResult",
    "ConfigError",
    "CostResult",
    "CurveHistory",
    "CurveProvider",
    "DataGapError",
    "DegenerateSampleError",
    "FitDiagnostics",
    "FundingError",
    "FundingSetup",
    "InsufficientDataError",
    "LinearCurve",
    "MeasureError",
    "OptimalRoll",
    "ParameterGrid",
    "ParseError",
    "PredictorParams",
    "RollEvent",
    "RollSchedule",
    "RunConfig",
    "ShiftForecast",
    "SpotCurve",
    "TTestResult",
    "add_years",
    "alpha_grid",
    "build_schedule",
    "calibrate",
    "cav",
    "cav_linear",
    "constant_provider",
    "efficiency",
    "evpi_roll",
    "ewma_gradient",
    "ewma_provider",
    "fit_linear",
    "forward_rate",
    "gross_excess",
    "load_config",
    "n_rolls",
    "newey_west_t_test",
    "optimal_roll",
    "paired_t_test",
    "pi_provider",
    "q_provider",
    "realized_cost",
    "refine_gradient",
    "roll_cost_curve",
    "run_backtest",
    "years_between",
    "zero_rate",
]
