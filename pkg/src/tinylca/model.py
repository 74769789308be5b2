"""Per-device footprint model.

Types and pure functions for the device-level view: life-cycle stages,
environmental indicators, functional-block bills of materials, and the
embodied / operational / training footprint math. Everything here is an
immutable value; all operations are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .exceptions import DimensionError
from .units import Dimension, Quantity, Unit, ratio


class LifeCycleStage(Enum):
    """The five hardware life-cycle stages, in fixed order."""

    RAW_MATERIALS = "RawMaterials"
    MANUFACTURING = "Manufacturing"
    TRANSPORT_DISTRIBUTION = "TransportDistribution"
    PRODUCT_USE = "ProductUse"
    END_OF_LIFE = "EndOfLife"


class Indicator(Enum):
    """Environmental indicators, each with exactly one canonical unit."""

    WATER_DEMAND = ("WaterDemand", Unit.LITER)
    FRESHWATER_EUTROPHICATION = ("FreshwaterEutrophication", Unit.GPEQ)
    PHOTOCHEMICAL_OXIDANT_FORMATION = ("PhotochemicalOxidantFormation", Unit.MGNMVOC)
    CLIMATE_CHANGE = ("ClimateChange", Unit.GCO2E)

    def __init__(self, label: str, unit: Unit):
        self.label = label
        self.unit = unit

    @classmethod
    def from_label(cls, label: str) -> "Indicator":
        for member in cls:
            if member.label == label:
                return member
        raise ValueError(
            f"unknown indicator '{label}'; valid: "
            + ", ".join(m.label for m in cls)
        )


class FunctionalBlock(Enum):
    """Hardware functional blocks an edge device is assembled from.

    ``TRANSPORT`` is the per-component distribution freight block of a bill
    of materials; it is not the same thing as the
    ``LifeCycleStage.TRANSPORT_DISTRIBUTION`` stage, although freight carbon
    booked on this block lands in that stage of a whole-life view.
    """

    PROCESSING = "Processing"
    MEMORY = "Memory"
    ACTUATORS = "Actuators"
    CASING = "Casing"
    CONNECTIVITY = "Connectivity"
    PCB = "PCB"
    POWER_SUPPLY = "PowerSupply"
    SECURITY = "Security"
    SENSING = "Sensing"
    TRANSPORT = "Transport"
    USER_INTERFACE = "UserInterface"
    OTHER = "Other"

    @classmethod
    def from_label(cls, label: str) -> "FunctionalBlock":
        for member in cls:
            if member.value == label:
                return member
        raise ValueError(
            f"unknown functional block '{label}'; valid: "
            + ", ".join(m.value for m in cls)
        )


class Bound(Enum):
    """Which end of a component's embodied-carbon range to evaluate."""

    LOW = "low"
    TYPICAL = "typical"
    HIGH = "high"


class DeviceTier(Enum):
    LOW_COST = "LowCost"
    MEDIUM_COST = "MediumCost"
    HIGH_COST = "HighCost"
    CUSTOM = "Custom"


#: Tolerance on a stage-share map summing to one.
SHARE_SUM_TOL = 1e-6


@dataclass(frozen=True)
class StageProfile:
    """Distribution of one indicator's total over the five life-cycle stages.

    ``shares`` maps every stage to a fraction in [0, 1]; the fractions must
    sum to one within :data:`SHARE_SUM_TOL`. ``total_note`` is free-text
    metadata (for example a marker that the total is illustrative while the
    shares are authoritative); it plays no part in any computation.
    """

    indicator: Indicator
    total: Quantity
    shares: dict[LifeCycleStage, float]
    total_note: str = ""

    def __post_init__(self):
        if self.total.unit is not self.indicator.unit:
            raise DimensionError(
                f"{self.indicator.label} totals must be in "
                f"{self.indicator.unit.symbol}, got {self.total.unit.symbol}"
            )
        full = {stage: float(self.shares.get(stage, 0.0)) for stage in LifeCycleStage}
        for stage, share in full.items():
            if not 0.0 <= share <= 1.0:
                raise ValueError(f"share for {stage.value} out of [0, 1]: {share}")
        total_share = sum(full.values())
        if abs(total_share - 1.0) > SHARE_SUM_TOL:
            raise ValueError(f"stage shares sum to {total_share}, expected 1")
        object.__setattr__(self, "shares", full)


@dataclass(frozen=True)
class ComponentEntry:
    """One bill-of-materials line: a block, a label, and an embodied range."""

    block: FunctionalBlock
    label: str
    low: Quantity
    typical: Quantity
    high: Quantity

    def __post_init__(self):
        for name, q in (("low", self.low), ("typical", self.typical), ("high", self.high)):
            if q.unit.dimension is not Dimension.CO2E:
                raise DimensionError(f"{name} bound of '{self.label}' must be a CO2e mass")
        lo, ty, hi = (q.in_unit(Unit.GCO2E) for q in (self.low, self.typical, self.high))
        if not lo <= ty <= hi:
            raise ValueError(
                f"component '{self.label}' ({self.block.value}): bounds must be "
                f"ordered low <= typical <= high, got {lo} / {ty} / {hi}"
            )

    def value_at(self, bound: Bound) -> Quantity:
        return {Bound.LOW: self.low, Bound.TYPICAL: self.typical, Bound.HIGH: self.high}[bound]


@dataclass(frozen=True)
class OperationalParams:
    """Inputs to the product-use (recharging) footprint."""

    power: Quantity
    duty_factor: float
    lifetime: Quantity
    grid_intensity: Quantity
    charge_efficiency: float

    def __post_init__(self):
        if self.power.unit.dimension is not Dimension.POWER:
            raise DimensionError("power must carry a power unit (mW or W)")
        if self.lifetime.unit.dimension is not Dimension.TIME:
            raise DimensionError("lifetime must carry a time unit")
        if self.grid_intensity.unit.dimension is not Dimension.GRID_INTENSITY:
            raise DimensionError("grid_intensity must be in gCO2e_per_kWh")
        if not 0.0 <= self.duty_factor <= 1.0:
            raise ValueError(f"duty_factor out of [0, 1]: {self.duty_factor}")
        if not 0.0 < self.charge_efficiency <= 1.0:
            raise ValueError(f"charge_efficiency out of (0, 1]: {self.charge_efficiency}")
        if self.lifetime.magnitude <= 0:
            raise ValueError("lifetime must be positive")

    @classmethod
    def of(
        cls,
        power_mw: float,
        duty_factor: float = 1.0,
        lifetime_years: float = 3.0,
        grid_intensity_g_per_kwh: float = 475.0,
        charge_efficiency: float = 1.0,
    ) -> "OperationalParams":
        return cls(
            power=Quantity(power_mw, Unit.MILLIWATT),
            duty_factor=duty_factor,
            lifetime=Quantity(lifetime_years, Unit.YEAR),
            grid_intensity=Quantity(grid_intensity_g_per_kwh, Unit.GCO2E_PER_KWH),
            charge_efficiency=charge_efficiency,
        )

    def with_lifetime_years(self, years: float) -> "OperationalParams":
        return replace(self, lifetime=Quantity(years, Unit.YEAR))


@dataclass(frozen=True)
class DeviceProfile:
    """A named device: its bill of materials plus use-stage parameters.

    ``tier`` and ``default_bound`` are metadata for presentation and for
    resolving a profile name on the command line; every number comes from
    ``components``, ``operational``, and ``training_amortized``.
    """

    name: str
    tier: DeviceTier
    components: tuple[ComponentEntry, ...]
    operational: OperationalParams
    training_amortized: Quantity = field(
        default_factory=lambda: Quantity(0.0, Unit.GCO2E)
    )
    default_bound: Bound = Bound.TYPICAL
    description: str = ""

    def __post_init__(self):
        if self.training_amortized.unit.dimension is not Dimension.CO2E:
            raise DimensionError("training_amortized must be a CO2e mass")
        object.__setattr__(self, "components", tuple(self.components))


#: Relative tolerance on a breakdown's stored total versus its parts.
BREAKDOWN_TOL = 1e-9


@dataclass(frozen=True)
class FootprintBreakdown:
    """Per-block embodied grams plus operational and training grams."""

    per_block: dict[FunctionalBlock, Quantity]
    operational: Quantity
    training: Quantity
    total: Quantity

    def __post_init__(self):
        parts = sum(q.in_unit(Unit.GCO2E) for q in self.per_block.values())
        parts += self.operational.in_unit(Unit.GCO2E)
        parts += self.training.in_unit(Unit.GCO2E)
        total = self.total.in_unit(Unit.GCO2E)
        if not math.isclose(total, parts, rel_tol=BREAKDOWN_TOL, abs_tol=BREAKDOWN_TOL):
            raise ValueError(
                f"breakdown total {total} gCO2e does not match its parts {parts} gCO2e"
            )

    @property
    def embodied_total(self) -> Quantity:
        return Quantity(
            sum(q.in_unit(Unit.GCO2E) for q in self.per_block.values()), Unit.GCO2E
        )


def operational_footprint(p: OperationalParams) -> Quantity:
    """Recharging emissions over the device lifetime, in gCO2e.

    energy_kWh = power_kW * duty * lifetime_hours / charge_efficiency,
    then grams = energy_kWh * grid intensity.
    """
    power_kw = p.power.in_unit(Unit.WATT) / 1e3
    hours = p.lifetime.in_unit(Unit.HOUR)
    energy_kwh = power_kw * p.duty_factor * hours / p.charge_efficiency
    return Quantity(energy_kwh * p.grid_intensity.in_unit(Unit.GCO2E_PER_KWH), Unit.GCO2E)


def embodied_footprint(device: DeviceProfile, bound: Bound) -> FootprintBreakdown:
    """Sum the bill of materials at one bound, grouped by functional block.

    Operational and training fields are zero in the result; the stored total
    is the single summation over per-block values.
    """
    grams: dict[FunctionalBlock, float] = {}
    for entry in device.components:
        grams[entry.block] = grams.get(entry.block, 0.0) + entry.value_at(bound).in_unit(
            Unit.GCO2E
        )
    per_block = {block: Quantity(g, Unit.GCO2E) for block, g in grams.items()}
    zero = Quantity(0.0, Unit.GCO2E)
    return FootprintBreakdown(
        per_block=per_block,
        operational=zero,
        training=zero,
        total=Quantity(sum(grams.values()), Unit.GCO2E),
    )


def total_footprint(device: DeviceProfile, bound: Bound) -> FootprintBreakdown:
    """Embodied breakdown with operational and amortized-training grams added."""
    embodied = embodied_footprint(device, bound)
    operational = operational_footprint(device.operational)
    training = device.training_amortized.to(Unit.GCO2E)
    total_g = (
        embodied.total.in_unit(Unit.GCO2E)
        + operational.in_unit(Unit.GCO2E)
        + training.magnitude
    )
    return FootprintBreakdown(
        per_block=embodied.per_block,
        operational=operational,
        training=training,
        total=Quantity(total_g, Unit.GCO2E),
    )


def indicator_breakdown(profile: StageProfile) -> dict[LifeCycleStage, Quantity]:
    """Split an indicator total across stages; values sum back to the total."""
    unit = profile.total.unit
    return {
        stage: Quantity(profile.total.magnitude * share, unit)
        for stage, share in profile.shares.items()
    }


def compare(a: Quantity, b: Quantity) -> float:
    """Dimensionless ratio a / b after unit normalization."""
    return ratio(a, b)
