"""Unit-aware quantities for footprint arithmetic.

Every magnitude the engine handles travels with its unit. Conversion goes
through an exact scale factor relative to one canonical unit per dimension,
so a round trip costs at most two float roundings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .exceptions import DimensionError

#: Mean Julian year. Device lifetimes are quoted in years, energy in hours.
HOURS_PER_YEAR = 8766.0


class Dimension(Enum):
    CO2E = "CO2-equivalent mass"
    WATER = "water volume"
    PHOSPHORUS = "phosphorus-equivalent mass"
    NMVOC = "NMVOC mass"
    ENERGY = "energy"
    POWER = "power"
    TIME = "time"
    GRID_INTENSITY = "grid carbon intensity"
    DIMENSIONLESS = "dimensionless"


class Unit(Enum):
    """Supported units: (symbol, dimension, scale to the canonical unit)."""

    GCO2E = ("gCO2e", Dimension.CO2E, 1.0)
    KGCO2E = ("kgCO2e", Dimension.CO2E, 1e3)
    TCO2E = ("tCO2e", Dimension.CO2E, 1e6)
    MTCO2E = ("MtCO2e", Dimension.CO2E, 1e12)
    GTCO2E = ("GtCO2e", Dimension.CO2E, 1e15)
    LITER = ("liter", Dimension.WATER, 1.0)
    GPEQ = ("gPeq", Dimension.PHOSPHORUS, 1.0)
    MGNMVOC = ("mgNMVOC", Dimension.NMVOC, 1.0)
    WH = ("Wh", Dimension.ENERGY, 1.0)
    KWH = ("kWh", Dimension.ENERGY, 1e3)
    MILLIWATT = ("mW", Dimension.POWER, 1e-3)
    WATT = ("W", Dimension.POWER, 1.0)
    YEAR = ("year", Dimension.TIME, HOURS_PER_YEAR)
    HOUR = ("hour", Dimension.TIME, 1.0)
    GCO2E_PER_KWH = ("gCO2e_per_kWh", Dimension.GRID_INTENSITY, 1.0)
    DIMENSIONLESS = ("dimensionless", Dimension.DIMENSIONLESS, 1.0)

    def __init__(self, symbol: str, dimension: Dimension, scale: float):
        self.symbol = symbol
        self.dimension = dimension
        self.scale = scale

    @classmethod
    def from_symbol(cls, symbol: str) -> "Unit":
        try:
            return _BY_SYMBOL[symbol]
        except KeyError:
            raise DimensionError(
                f"unknown unit symbol '{symbol}'; "
                f"known: {', '.join(sorted(_BY_SYMBOL))}"
            ) from None

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Unit.{self.name}"


_BY_SYMBOL: dict[str, Unit] = {u.symbol: u for u in Unit}


@dataclass(frozen=True, slots=True)
class Quantity:
    """A non-negative magnitude bound to a unit.

    Signed values are deliberately unrepresentable here; the one signed
    number in the system (net fleet impact) has its own type.
    """

    magnitude: float
    unit: Unit

    def __post_init__(self):
        if not math.isfinite(self.magnitude):
            raise ValueError(f"magnitude must be finite, got {self.magnitude!r}")
        if self.magnitude < 0:
            raise ValueError(f"magnitude must be non-negative, got {self.magnitude!r}")

    def to(self, target: Unit) -> "Quantity":
        """Convert to another unit of the same dimension."""
        if target is self.unit:
            return self
        if target.dimension is not self.unit.dimension:
            raise DimensionError(
                f"cannot convert {self.unit.symbol} ({self.unit.dimension.value}) "
                f"to {target.symbol} ({target.dimension.value})"
            )
        return Quantity(self.magnitude * self.unit.scale / target.scale, target)

    def in_unit(self, target: Unit) -> float:
        """Magnitude expressed in ``target``, as a plain float."""
        return self.to(target).magnitude

    def __str__(self) -> str:
        return f"{self.magnitude:g} {self.unit.symbol}"


def convert(q: Quantity, target: Unit) -> Quantity:
    """Exact scale-factor conversion; rejects cross-dimension targets."""
    return q.to(target)


def ratio(a: Quantity, b: Quantity) -> float:
    """Dimensionless ratio a / b after normalizing both to a common unit."""
    if a.unit.dimension is not b.unit.dimension:
        raise DimensionError(
            f"cannot take the ratio of {a.unit.symbol} and {b.unit.symbol}: "
            "dimensions differ"
        )
    denom = b.in_unit(a.unit)
    if denom == 0:
        raise ZeroDivisionError("ratio denominator is zero")
    return a.magnitude / denom
