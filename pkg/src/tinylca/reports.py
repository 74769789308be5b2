"""Resolved-scenario payload builders shared by the CLI and the HTTP service.

Both front ends call the same builders on the same engine values, so a JSON
report from the command line is field-for-field identical to the service
response for the same inputs. Every payload carries a schema_version and
echoes the fully resolved parameter set, defaults included.
"""

from __future__ import annotations

from dataclasses import replace

from . import fleet as fleetmod
from .datastore import DataStore
from .growth import CrossingResult, GrowthModel, LinearGrowth, first_crossing
from .model import (
    Bound,
    DeviceProfile,
    FootprintBreakdown,
    FunctionalBlock,
    OperationalParams,
    compare,
    total_footprint,
)
from .units import Quantity, Unit

SCHEMA_VERSION = 1


def apply_operational_overrides(
    params: OperationalParams,
    power_mw: float | None = None,
    duty_factor: float | None = None,
    lifetime_years: float | None = None,
    grid_intensity_g_per_kwh: float | None = None,
    charge_efficiency: float | None = None,
) -> OperationalParams:
    """Rebuild operational parameters with any subset of fields overridden."""
    out = params
    if power_mw is not None:
        out = replace(out, power=Quantity(power_mw, Unit.MILLIWATT))
    if duty_factor is not None:
        out = replace(out, duty_factor=duty_factor)
    if lifetime_years is not None:
        out = replace(out, lifetime=Quantity(lifetime_years, Unit.YEAR))
    if grid_intensity_g_per_kwh is not None:
        out = replace(out, grid_intensity=Quantity(grid_intensity_g_per_kwh, Unit.GCO2E_PER_KWH))
    if charge_efficiency is not None:
        out = replace(out, charge_efficiency=charge_efficiency)
    return out


def resolve_device(
    store: DataStore,
    profile_name: str,
    bound: Bound | str | None = None,
    operational_overrides: dict | None = None,
    training_amortized_g: float | None = None,
) -> tuple[DeviceProfile, Bound]:
    """Look up a profile and apply any overrides; bound defaults to the profile's."""
    device = store.profile(profile_name)
    resolved_bound = device.default_bound if bound is None else (
        Bound(bound) if isinstance(bound, str) else bound
    )
    if operational_overrides:
        device = replace(
            device,
            operational=apply_operational_overrides(device.operational, **operational_overrides),
        )
    if training_amortized_g is not None:
        device = replace(device, training_amortized=Quantity(training_amortized_g, Unit.GCO2E))
    return device, resolved_bound


def _operational_dict(params: OperationalParams) -> dict:
    return {
        "power_mw": params.power.in_unit(Unit.MILLIWATT),
        "duty_factor": params.duty_factor,
        "lifetime_years": params.lifetime.in_unit(Unit.YEAR),
        "grid_intensity_g_per_kwh": params.grid_intensity.in_unit(Unit.GCO2E_PER_KWH),
        "charge_efficiency": params.charge_efficiency,
    }


def footprint_payload(device: DeviceProfile, bound: Bound) -> dict:
    """Per-block / operational / training breakdown for one device."""
    breakdown: FootprintBreakdown = total_footprint(device, bound)
    per_block = {
        block.value: breakdown.per_block[block].in_unit(Unit.GCO2E)
        for block in FunctionalBlock
        if block in breakdown.per_block
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "profile": device.name,
        "tier": device.tier.value,
        "bound": bound.value,
        "parameters": {
            "operational": _operational_dict(device.operational),
            "training_amortized_g": device.training_amortized.in_unit(Unit.GCO2E),
        },
        "per_block_g": per_block,
        "embodied_g": breakdown.embodied_total.in_unit(Unit.GCO2E),
        "operational_g": breakdown.operational.in_unit(Unit.GCO2E),
        "training_g": breakdown.training.in_unit(Unit.GCO2E),
        "total_g": breakdown.total.in_unit(Unit.GCO2E),
    }


def compare_payload(store: DataStore, device: DeviceProfile, bound: Bound, reference_name: str) -> dict:
    """Reference total vs profile total, with platform-tier context.

    References published only as a ratio band get the implied admissible
    absolute range at this profile's total instead of a single ratio.
    """
    reference = store.references.get(reference_name)
    profile_total = total_footprint(device, bound).total
    payload: dict = {
        "schema_version": SCHEMA_VERSION,
        "profile": device.name,
        "bound": bound.value,
        "profile_total_g": profile_total.in_unit(Unit.GCO2E),
        "reference": reference.name,
        "reference_total_g": None,
        "ratio": None,
        "ratio_constraints": None,
        "implied_reference_range_g": None,
        "platform_tiers": [dict(t) for t in store.references.platform_tiers],
    }
    if reference.total is not None:
        payload["reference_total_g"] = reference.total.in_unit(Unit.GCO2E)
        payload["ratio"] = compare(reference.total, profile_total)
    if reference.ratio_constraints is not None:
        lo, hi = reference.ratio_constraints
        total_g = profile_total.in_unit(Unit.GCO2E)
        payload["ratio_constraints"] = {"min": lo, "max": hi}
        payload["implied_reference_range_g"] = {"min": lo * total_g, "max": hi * total_g}
    return payload


def _build_scenario(
    store: DataStore,
    device_count: int,
    per_device: Quantity,
    horizon_years: float,
    reductions: dict[str, float],
    global_gt: float,
) -> fleetmod.FleetScenario:
    return fleetmod.FleetScenario(
        device_count=device_count,
        per_device=per_device,
        horizon=Quantity(horizon_years, Unit.YEAR),
        reductions=dict(reductions),
        global_emissions=fleetmod.GlobalEmissions.of_gt(global_gt),
        sectors=store.sectors,
    )


def _breakeven_terms(scenario: fleetmod.FleetScenario) -> tuple[Quantity, Quantity, float, float | None]:
    """Fleet footprint, fixed savings, uncovered sector share, break-even rate.

    Sectors named in the reduction map count as covered; the break-even rate
    is what the remaining sectors must average. When nothing remains and the
    fixed savings fall short, the rate is None (unattainable).
    """
    fp = fleetmod.fleet_footprint(scenario.device_count, scenario.per_device)
    fixed = fleetmod.avoided_emissions(scenario)
    covered = sum(scenario.sectors.share(name) for name in scenario.reductions)
    other_share = max(0.0, 1.0 - covered)
    if fixed.in_unit(Unit.MTCO2E) >= fp.in_unit(Unit.MTCO2E):
        rate: float | None = 0.0
    elif other_share <= 0.0:
        rate = None
    else:
        rate = fleetmod.break_even_rate(
            fp, fixed, other_share, scenario.global_emissions, scenario.horizon
        )
    return fp, fixed, other_share, rate


def fleet_payload(
    store: DataStore,
    device: DeviceProfile,
    bound: Bound,
    device_count: int,
    horizon_years: float,
    reductions: dict[str, float],
    global_gt: float,
) -> dict:
    """Full fleet report: footprint, avoided, offset, break-even, net."""
    per_device = total_footprint(device, bound).total
    scenario = _build_scenario(store, device_count, per_device, horizon_years, reductions, global_gt)
    fp, fixed, other_share, rate = _breakeven_terms(scenario)
    net = fleetmod.net_impact(scenario)
    fp_mt = fp.in_unit(Unit.MTCO2E)
    return {
        "schema_version": SCHEMA_VERSION,
        "parameters": {
            "device_count": device_count,
            "profile": device.name,
            "bound": bound.value,
            "per_device_g": per_device.in_unit(Unit.GCO2E),
            "horizon_years": horizon_years,
            "global_emissions_gt": global_gt,
            "reductions": dict(sorted(reductions.items())),
            "sector_shares": dict(sorted(store.sectors.shares.items())),
            "operational": _operational_dict(device.operational),
        },
        "fleet_footprint_mt": fp_mt,
        "avoided_mt": fixed.in_unit(Unit.MTCO2E),
        "offset_fraction": (
            fleetmod.offset_fraction(fp, fixed) if fp_mt > 0 else None
        ),
        "break_even": {
            "fixed_savings_mt": fixed.in_unit(Unit.MTCO2E),
            "other_share": other_share,
            "rate": rate,
        },
        "net_impact_mt": net.value_mt,
    }


def breakeven_payload(
    store: DataStore,
    device: DeviceProfile,
    bound: Bound,
    device_count: int,
    horizon_years: float,
    reductions: dict[str, float],
    global_gt: float,
) -> dict:
    """Break-even view of the same scenario the fleet report covers."""
    per_device = total_footprint(device, bound).total
    scenario = _build_scenario(store, device_count, per_device, horizon_years, reductions, global_gt)
    fp, fixed, other_share, rate = _breakeven_terms(scenario)
    return {
        "schema_version": SCHEMA_VERSION,
        "parameters": {
            "device_count": device_count,
            "profile": device.name,
            "bound": bound.value,
            "per_device_g": per_device.in_unit(Unit.GCO2E),
            "horizon_years": horizon_years,
            "global_emissions_gt": global_gt,
            "reductions": dict(sorted(reductions.items())),
        },
        "fleet_footprint_mt": fp.in_unit(Unit.MTCO2E),
        "fixed_savings_mt": fixed.in_unit(Unit.MTCO2E),
        "other_share": other_share,
        "break_even_rate": rate,
    }


def model_dict(model: GrowthModel) -> dict:
    if isinstance(model, LinearGrowth):
        return {
            "family": "linear",
            "base_year": model.base_year,
            "base_count_billion": model.base_count,
            "slope_billion_per_year": model.slope,
        }
    return {
        "family": "exponential",
        "base_year": model.base_year,
        "base_count_billion": model.base_count,
        "rate_per_year": model.rate,
    }


def project_payload(model: GrowthModel, thresholds: list[float]) -> dict:
    """First-crossing years for each threshold; unreachable ones are marked."""
    crossings = []
    for threshold in thresholds:
        result: CrossingResult | None = first_crossing(model, threshold)
        crossings.append(
            {
                "threshold_billion": threshold,
                "year": result.year if result is not None else None,
                "never": result is None,
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "model": model_dict(model),
        "crossings": crossings,
    }


def sweep_payload(
    store: DataStore,
    device: DeviceProfile,
    bound: Bound,
    device_count: int,
    reductions: dict[str, float],
    global_gt: float,
    lifetimes: list[float],
) -> dict:
    """Lifetime sensitivity rows for the residential-savings scenario."""
    per_device = total_footprint(device, bound).total
    base = _build_scenario(
        store, device_count, per_device,
        device.operational.lifetime.in_unit(Unit.YEAR), reductions, global_gt,
    )
    rows = fleetmod.lifetime_sweep(base, device, bound, lifetimes)
    return {
        "schema_version": SCHEMA_VERSION,
        "parameters": {
            "device_count": device_count,
            "profile": device.name,
            "bound": bound.value,
            "global_emissions_gt": global_gt,
            "reductions": dict(sorted(reductions.items())),
            "operational": _operational_dict(device.operational),
        },
        "rows": [
            {
                "lifetime_years": row.lifetime_years,
                "fleet_footprint_mt": row.fleet_footprint.in_unit(Unit.MTCO2E),
                "residential_savings_mt": row.residential_savings.in_unit(Unit.MTCO2E),
                "offset_fraction": row.offset_fraction,
                "break_even_rate": row.break_even_rate,
            }
            for row in rows
        ],
    }


def profiles_payload(store: DataStore) -> dict:
    """Stable (lexicographic) listing of loaded profile names and tiers."""
    return {
        "schema_version": SCHEMA_VERSION,
        "profiles": [
            {"name": name, "tier": store.profiles[name].tier.value}
            for name in sorted(store.profiles)
        ],
    }
