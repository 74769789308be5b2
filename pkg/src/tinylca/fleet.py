"""Fleet-scale footprint, avoided emissions, break-even, and lifetime sweeps.

Scales a per-device footprint to a global deployment and weighs it against
the emissions those deployments can avoid in other economic sectors. All
functions are pure; the world-emissions constant is configuration passed in
by the caller, never baked into the math.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import UnknownSectorError
from .model import Bound, DeviceProfile, embodied_footprint, operational_footprint
from .units import Dimension, Quantity, Unit

#: Default world annual CO2e emissions, GtCO2e per year. The bundled
#: residential-savings baseline back-solves to this value.
DEFAULT_GLOBAL_EMISSIONS_GT = 32.8

#: Documented alternative: the bundled all-sector net-reduction headline
#: back-solves to this slightly higher annual total. Exposed so reports can
#: flag which constant produced a number.
ALTERNATE_GLOBAL_EMISSIONS_GT = 33.6

#: Building-automation style reduction applied to the residential sector in
#: the baseline scenario.
DEFAULT_RESIDENTIAL_REDUCTION = 0.20

_SECTOR_SUM_TOL = 1e-6


@dataclass(frozen=True)
class SectorShares:
    """Map of sector name -> fraction of global annual CO2 emissions."""

    shares: dict[str, float]

    def __post_init__(self):
        for name, share in self.shares.items():
            if not 0.0 <= share <= 1.0:
                raise ValueError(f"sector '{name}' share out of [0, 1]: {share}")
        total = sum(self.shares.values())
        if abs(total - 1.0) > _SECTOR_SUM_TOL:
            raise ValueError(f"sector shares sum to {total}, expected 1")

    def share(self, name: str) -> float:
        return self.shares[name]

    @property
    def names(self) -> list[str]:
        return sorted(self.shares)


@dataclass(frozen=True)
class GlobalEmissions:
    """Annual world emissions total."""

    annual_total: Quantity

    def __post_init__(self):
        if self.annual_total.unit.dimension is not Dimension.CO2E:
            raise ValueError("annual_total must be a CO2e mass")
        if self.annual_total.magnitude <= 0:
            raise ValueError("annual_total must be positive")

    @classmethod
    def of_gt(cls, gigatonnes: float) -> "GlobalEmissions":
        return cls(Quantity(gigatonnes, Unit.GTCO2E))

    @property
    def mt_per_year(self) -> float:
        return self.annual_total.in_unit(Unit.MTCO2E)


@dataclass(frozen=True)
class FleetScenario:
    """A deployed fleet plus the sector reductions it is credited with."""

    device_count: int
    per_device: Quantity
    horizon: Quantity
    reductions: dict[str, float]
    global_emissions: GlobalEmissions
    sectors: SectorShares

    def __post_init__(self):
        if self.device_count < 0:
            raise ValueError("device_count must be non-negative")
        if self.per_device.unit.dimension is not Dimension.CO2E:
            raise ValueError("per_device must be a CO2e mass")
        if self.horizon.unit.dimension is not Dimension.TIME:
            raise ValueError("horizon must carry a time unit")
        if self.horizon.magnitude <= 0:
            raise ValueError("horizon must be positive")
        unknown = [k for k in self.reductions if k not in self.sectors.shares]
        if unknown:
            raise UnknownSectorError(unknown, self.sectors.names)
        for name, rate in self.reductions.items():
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"reduction for '{name}' out of [0, 1]: {rate}")

    @property
    def horizon_years(self) -> float:
        return self.horizon.in_unit(Unit.YEAR)


@dataclass(frozen=True)
class NetImpact:
    """Signed fleet outcome in MtCO2e: positive = net emissions, negative = net savings."""

    value_mt: float

    @property
    def is_net_savings(self) -> bool:
        return self.value_mt < 0


@dataclass(frozen=True)
class SweepRow:
    lifetime_years: float
    fleet_footprint: Quantity
    residential_savings: Quantity
    offset_fraction: float
    break_even_rate: float


def fleet_footprint(device_count: int, per_device: Quantity) -> Quantity:
    """Fleet total = count x per-device footprint, in MtCO2e."""
    if device_count < 0:
        raise ValueError("device_count must be non-negative")
    return Quantity(device_count * per_device.in_unit(Unit.MTCO2E), Unit.MTCO2E)


def avoided_emissions(scenario: FleetScenario) -> Quantity:
    """Emissions avoided by the credited sector reductions over the horizon."""
    global_mt = scenario.global_emissions.mt_per_year
    years = scenario.horizon_years
    avoided = sum(
        global_mt * scenario.sectors.share(name) * rate * years
        for name, rate in scenario.reductions.items()
    )
    return Quantity(avoided, Unit.MTCO2E)


def break_even_rate(
    fleet_fp: Quantity,
    fixed_savings: Quantity,
    other_share: float,
    global_emissions: GlobalEmissions,
    horizon: Quantity,
) -> float:
    """Average reduction the remaining sectors need for the fleet to break even.

    Clamps at zero when the fixed savings already cover the footprint; a
    surplus is reported through :func:`offset_fraction`, not a negative rate.
    """
    gap_mt = fleet_fp.in_unit(Unit.MTCO2E) - fixed_savings.in_unit(Unit.MTCO2E)
    if gap_mt <= 0:
        return 0.0
    if not 0.0 < other_share <= 1.0:
        raise ValueError(f"other_share out of (0, 1]: {other_share}")
    years = horizon.in_unit(Unit.YEAR)
    if years <= 0:
        raise ValueError("horizon must be positive")
    return gap_mt / (global_emissions.mt_per_year * other_share * years)


def net_impact(scenario: FleetScenario) -> NetImpact:
    """Fleet footprint minus avoided emissions; negative is a net benefit."""
    fp = fleet_footprint(scenario.device_count, scenario.per_device)
    avoided = avoided_emissions(scenario)
    return NetImpact(fp.in_unit(Unit.MTCO2E) - avoided.in_unit(Unit.MTCO2E))


def offset_fraction(fleet_fp: Quantity, savings: Quantity) -> float:
    """Share of the fleet footprint covered by the given savings, capped at 1."""
    fp_mt = fleet_fp.in_unit(Unit.MTCO2E)
    if fp_mt <= 0:
        raise ZeroDivisionError("offset fraction is undefined for a zero fleet footprint")
    return min(1.0, savings.in_unit(Unit.MTCO2E) / fp_mt)


def lifetime_sweep(
    base: FleetScenario,
    device: DeviceProfile,
    bound: Bound,
    lifetimes: list[float],
) -> list[SweepRow]:
    """Re-run the residential-savings story across device lifetimes.

    The embodied footprint is held constant; only the operational term and
    the savings-accrual window scale with the lifetime. The savings column
    uses the residential sector alone, matching the baseline framing; the
    break-even column then asks what the remaining sectors must contribute.
    """
    if not lifetimes:
        raise ValueError("lifetimes must be non-empty")
    if any(years <= 0 for years in lifetimes):
        raise ValueError("every lifetime must be positive")

    embodied_g = embodied_footprint(device, bound).total.in_unit(Unit.GCO2E)
    training_g = device.training_amortized.in_unit(Unit.GCO2E)
    res_share = base.sectors.share("residential")
    res_rate = base.reductions.get("residential", 0.0)
    global_mt = base.global_emissions.mt_per_year

    rows = []
    for years in lifetimes:
        params = device.operational.with_lifetime_years(years)
        per_device_g = embodied_g + operational_footprint(params).in_unit(Unit.GCO2E)
        per_device_g += training_g
        fp = fleet_footprint(base.device_count, Quantity(per_device_g, Unit.GCO2E))
        savings = Quantity(global_mt * res_share * res_rate * years, Unit.MTCO2E)
        rows.append(
            SweepRow(
                lifetime_years=years,
                fleet_footprint=fp,
                residential_savings=savings,
                offset_fraction=offset_fraction(fp, savings),
                break_even_rate=break_even_rate(
                    fp,
                    savings,
                    1.0 - res_share,
                    base.global_emissions,
                    Quantity(years, Unit.YEAR),
                ),
            )
        )
    return rows
