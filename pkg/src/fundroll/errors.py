"""Exception hierarchy shared across the package."""


class FundingError(Exception):
    """Base class for package-specific failures."""


class BufferViolationError(FundingError, ValueError):
    """Roll length does not clear the liquidity buffer, so rolls cannot progress."""


class DataGapError(FundingError):
    """Historical curve data is missing for a date the computation requires."""


class InsufficientDataError(FundingError, ValueError):
    """Too few observations to perform the requested computation."""


class DegenerateSampleError(FundingError, ValueError):
    """Sample statistics are degenerate, e.g. zero variance in a t-test."""


class MeasureError(FundingError):
    """A curve provider failed while being queried for a forward rate."""


class ParseError(FundingError):
    """An input file could not be parsed; the message carries file/line context."""


class ConfigError(FundingError):
    """Run configuration is missing, inconsistent, or references bad paths."""
