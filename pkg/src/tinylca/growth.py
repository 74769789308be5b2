"""Device-count growth models and first-crossing queries.

Linear and exponential trajectories in billions of devices, fitted from
(year, count) anchor points. Crossings are resolved to whole calendar years:
the returned year is the first whose projected count reaches the threshold.
A flat model that can never reach a threshold yields ``None`` rather than an
error, since "never" is an expected answer, not a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class GrowthFamily(Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class LinearGrowth:
    base_year: int
    base_count: float  # billions
    slope: float  # billions per year

    def __post_init__(self):
        if self.base_count <= 0:
            raise ValueError("base_count must be positive")
        if self.slope < 0:
            raise ValueError("slope must be non-negative")


@dataclass(frozen=True)
class ExponentialGrowth:
    base_year: int
    base_count: float  # billions
    rate: float  # fractional growth per year

    def __post_init__(self):
        if self.base_count <= 0:
            raise ValueError("base_count must be positive")
        if self.rate < 0:
            raise ValueError("rate must be non-negative")


GrowthModel = LinearGrowth | ExponentialGrowth


@dataclass(frozen=True)
class CrossingResult:
    threshold: float  # billions
    year: int


#: A projection within this relative distance of a threshold counts as
#: reaching it, so float dust at an exact anchor year cannot push a crossing
#: into the following year.
REACH_REL_TOL = 1e-9


def reaches(model: GrowthModel, year: int, threshold: float) -> bool:
    """Whether the projection at ``year`` reaches ``threshold`` billions."""
    return project(model, year) >= threshold * (1.0 - REACH_REL_TOL)


def project(model: GrowthModel, year: int) -> float:
    """Projected device count (billions) at a calendar year."""
    if year < model.base_year:
        raise ValueError(f"year {year} precedes the model's base year {model.base_year}")
    dt = year - model.base_year
    if isinstance(model, LinearGrowth):
        return model.base_count + model.slope * dt
    return model.base_count * (1.0 + model.rate) ** dt


def first_crossing(model: GrowthModel, threshold: float) -> CrossingResult | None:
    """First calendar year the projection reaches ``threshold`` billions.

    Closed form, then integer ceiling, then a post-hoc check that the
    returned year really is the first one at or above the threshold (guards
    against float dust near exact hits). Returns ``None`` when a flat model
    can never get there.
    """
    if threshold <= model.base_count:
        return CrossingResult(threshold=threshold, year=model.base_year)

    if isinstance(model, LinearGrowth):
        if model.slope == 0:
            return None
        t = (threshold - model.base_count) / model.slope
    else:
        if model.rate == 0:
            return None
        t = math.log(threshold / model.base_count) / math.log1p(model.rate)

    year = model.base_year + math.ceil(t)
    while not reaches(model, year, threshold):
        year += 1
    while year - 1 >= model.base_year and reaches(model, year - 1, threshold):
        year -= 1
    return CrossingResult(threshold=threshold, year=year)


def fit(points: list[tuple[int, float]], family: GrowthFamily | str) -> GrowthModel:
    """Fit a growth model through (year, count-in-billions) points.

    Two points interpolate exactly; more than two are fitted least-squares
    (on log counts for the exponential family). Years must be strictly
    increasing and counts positive.
    """
    family = GrowthFamily(family) if isinstance(family, str) else family
    if len(points) < 2:
        raise ValueError("fit needs at least two points")
    years = [int(y) for y, _ in points]
    counts = [float(c) for _, c in points]
    for a, b in zip(years, years[1:]):
        if b <= a:
            raise ValueError(f"years must be strictly increasing, got {a} then {b}")
    if any(c <= 0 for c in counts):
        raise ValueError("counts must be positive")

    base_year = years[0]
    if len(points) == 2:
        (y1, c1), (y2, c2) = (years[0], counts[0]), (years[1], counts[1])
        span = y2 - y1
        if family is GrowthFamily.LINEAR:
            return LinearGrowth(base_year=y1, base_count=c1, slope=(c2 - c1) / span)
        return ExponentialGrowth(base_year=y1, base_count=c1, rate=(c2 / c1) ** (1.0 / span) - 1.0)

    values = counts if family is GrowthFamily.LINEAR else [math.log(c) for c in counts]
    slope, intercept = _least_squares(years, values)
    if family is GrowthFamily.LINEAR:
        return LinearGrowth(
            base_year=base_year,
            base_count=intercept + slope * base_year,
            slope=slope,
        )
    return ExponentialGrowth(
        base_year=base_year,
        base_count=math.exp(intercept + slope * base_year),
        rate=math.exp(slope) - 1.0,
    )


def _least_squares(xs: list[int], ys: list[float]) -> tuple[float, float]:
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    var = sum((x - mean_x) ** 2 for x in xs)
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = cov / var
    return slope, mean_y - slope * mean_x


# Anchor points from published IoT device-count projections (Statista-based
# reports): roughly 15 billion devices in 2023, 50 billion reached in 2041
# under linear growth, and 50 -> 250 billion over 2032-2043 under exponential
# growth. The exponential column of such projections is not generated by a
# single constant rate, so the bundled model pins the 50 B and 250 B rows.

def default_linear() -> LinearGrowth:
    return fit([(2023, 15.0), (2041, 50.0)], GrowthFamily.LINEAR)  # type: ignore[return-value]


def default_exponential() -> ExponentialGrowth:
    return fit([(2032, 50.0), (2043, 250.0)], GrowthFamily.EXPONENTIAL)  # type: ignore[return-value]
