from __future__ import annotations

from datetime import date

import pytest

from fundroll import FundingSetup, SpotCurve

XIBOR_TENORS = (1 / 12, 2 / 12, 0.25, 0.5, 0.75, 1.0)
AS_OF = date(2005, 6, 3)


def flat_curve(rate: float, tenors=XIBOR_TENORS, as_of: date = AS_OF) -> SpotCurve:
    return SpotCurve(as_of, tenors, tuple(rate for _ in tenors))


def linear_spot(a: float, b: float, tenors=XIBOR_TENORS, as_of: date = AS_OF) -> SpotCurve:
    """Sample a straight line a + b*T on a tenor grid; linear interpolation
    reproduces the line exactly between the samples."""
    return SpotCurve(as_of, tenors, tuple(a + b * t for t in tenors))


@pytest.fixture
def std_setup() -> FundingSetup:
    """One-year horizon, one-month buffer, 0.75 bid-ask fraction."""
    return FundingSetup(h=1.0, delta=1 / 12, phi=0.75)


@pytest.fixture
def noask_setup() -> FundingSetup:
    """Same horizon and buffer with no bid-ask spread."""
    return FundingSetup(h=1.0, delta=1 / 12, phi=1.0)
