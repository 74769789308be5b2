"""Render the standard report figures to image files, with CSV data alongside.

Each chart writes a PNG and a CSV carrying exactly the plotted numbers, so
the delimited data can be re-plotted or diffed without the image. Rendering
is deterministic for fixed inputs: no timestamps, fixed ordering.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .datastore import DataStore
from .growth import GrowthModel, project
from .model import FunctionalBlock, total_footprint
from .reports import fleet_payload, sweep_payload
from .units import Unit

#: Stack order for breakdown charts: blocks in enum order, then use and training.
SEGMENT_ORDER = [block.value for block in FunctionalBlock] + ["ProductUse", "Training"]


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def render_device_breakdown(store: DataStore, out_dir: Path, stem: str = "device_breakdown") -> list[Path]:
    """Stacked bars of per-block, product-use, and training grams per profile."""
    names = sorted(store.profiles)
    segments: dict[str, dict[str, float]] = {}
    for name in names:
        device = store.profiles[name]
        breakdown = total_footprint(device, device.default_bound)
        per = {block.value: q.in_unit(Unit.GCO2E) for block, q in breakdown.per_block.items()}
        per["ProductUse"] = breakdown.operational.in_unit(Unit.GCO2E)
        per["Training"] = breakdown.training.in_unit(Unit.GCO2E)
        segments[name] = per

    rows = [
        [name, segment, segments[name].get(segment, 0.0)]
        for name in names
        for segment in SEGMENT_ORDER
    ]
    csv_path = out_dir / f"{stem}.csv"
    _write_csv(csv_path, ["profile", "segment", "co2e_g"], rows)

    fig, ax = plt.subplots(figsize=(8, 5))
    bottoms = [0.0] * len(names)
    for segment in SEGMENT_ORDER:
        values = [segments[name].get(segment, 0.0) for name in names]
        if not any(values):
            continue
        ax.bar(names, values, bottom=bottoms, label=segment)
        bottoms = [b + v for b, v in zip(bottoms, values)]
    ax.set_ylabel("embodied + use + training footprint (gCO2e)")
    ax.set_title("Device footprint by functional block")
    ax.legend(fontsize=7, ncol=2)
    png_path = out_dir / f"{stem}.png"
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [png_path, csv_path]


def render_fleet_bars(
    store: DataStore,
    profile_name: str,
    device_count: int,
    horizon_years: float,
    residential_reduction: float,
    global_gt: float,
    out_dir: Path,
    stem: str = "fleet_breakeven",
) -> list[Path]:
    """Fleet footprint vs avoided-emissions bars, including the break-even bar."""
    device = store.profile(profile_name)
    residential = fleet_payload(
        store, device, device.default_bound, device_count, horizon_years,
        {"residential": residential_reduction}, global_gt,
    )
    all_sectors = fleet_payload(
        store, device, device.default_bound, device_count, horizon_years,
        {name: residential_reduction for name in store.sectors.names}, global_gt,
    )
    rate = residential["break_even"]["rate"] or 0.0
    other = {
        name: rate for name in store.sectors.names if name != "residential"
    }
    other["residential"] = residential_reduction
    breakeven = fleet_payload(
        store, device, device.default_bound, device_count, horizon_years, other, global_gt,
    )

    bars = [
        ("fleet footprint", residential["fleet_footprint_mt"]),
        (f"residential @{residential_reduction:.0%}", residential["avoided_mt"]),
        (f"+ other sectors @{rate:.2%} (break-even)", breakeven["avoided_mt"]),
        (f"all sectors @{residential_reduction:.0%}", all_sectors["avoided_mt"]),
    ]
    csv_path = out_dir / f"{stem}.csv"
    _write_csv(csv_path, ["bar", "co2e_mt"], [[label, value] for label, value in bars])

    fig, ax = plt.subplots(figsize=(8, 5))
    labels = [label for label, _ in bars]
    values = [value for _, value in bars]
    colors = ["#1f77b4", "#2ca02c", "#ff7f0e", "#d4c720"]
    ax.bar(labels, values, color=colors)
    ax.set_ylabel(f"MtCO2e over {horizon_years:g} years")
    ax.set_title(
        f"{device_count:,.0f} devices ({profile_name}) vs avoided emissions "
        f"[world total {global_gt:g} Gt/y]"
    )
    ax.tick_params(axis="x", labelsize=7)
    png_path = out_dir / f"{stem}.png"
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [png_path, csv_path]


def render_growth(
    models: dict[str, GrowthModel],
    start_year: int,
    end_year: int,
    out_dir: Path,
    stem: str = "growth_projection",
) -> list[Path]:
    """Projected device counts per model on a log scale."""
    years = list(range(start_year, end_year + 1))
    series = {
        label: [project(model, max(year, model.base_year)) for year in years]
        for label, model in models.items()
    }
    labels = sorted(series)
    rows = [[year] + [series[label][i] for label in labels] for i, year in enumerate(years)]
    csv_path = out_dir / f"{stem}.csv"
    _write_csv(csv_path, ["year"] + [f"{label}_billion" for label in labels], rows)

    fig, ax = plt.subplots(figsize=(8, 5))
    for label in labels:
        ax.plot(years, series[label], label=label)
    ax.set_yscale("log")
    ax.set_xlabel("year")
    ax.set_ylabel("devices (billions, log scale)")
    ax.set_title("Device-count projections")
    ax.legend()
    png_path = out_dir / f"{stem}.png"
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [png_path, csv_path]


def render_sweep(
    store: DataStore,
    profile_name: str,
    device_count: int,
    residential_reduction: float,
    global_gt: float,
    lifetimes: list[float],
    out_dir: Path,
    stem: str = "lifetime_sweep",
) -> list[Path]:
    """Offset fraction and break-even rate as the device lifetime varies."""
    device = store.profile(profile_name)
    payload = sweep_payload(
        store, device, device.default_bound, device_count,
        {"residential": residential_reduction}, global_gt, lifetimes,
    )
    rows = payload["rows"]
    csv_path = out_dir / f"{stem}.csv"
    _write_csv(
        csv_path,
        ["lifetime_years", "fleet_footprint_mt", "residential_savings_mt",
         "offset_fraction", "break_even_rate"],
        [
            [r["lifetime_years"], r["fleet_footprint_mt"], r["residential_savings_mt"],
             r["offset_fraction"], r["break_even_rate"]]
            for r in rows
        ],
    )

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    years = [r["lifetime_years"] for r in rows]
    ax1.plot(years, [r["offset_fraction"] for r in rows], marker="o")
    ax1.set_xlabel("device lifetime (years)")
    ax1.set_ylabel("residential offset fraction")
    ax1.set_ylim(0, 1.05)
    ax2.plot(years, [100 * (r["break_even_rate"] or 0.0) for r in rows], marker="o", color="#ff7f0e")
    ax2.set_xlabel("device lifetime (years)")
    ax2.set_ylabel("other-sector break-even rate (%)")
    fig.suptitle(f"Lifetime sensitivity ({profile_name}, {device_count:,.0f} devices)")
    png_path = out_dir / f"{stem}.png"
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [png_path, csv_path]


def render_all(
    store: DataStore,
    out_dir: str | Path,
    profile_name: str = "high-cost",
    device_count: int = 250_000_000_000,
    horizon_years: float = 3.0,
    residential_reduction: float = 0.2,
    global_gt: float = 32.8,
) -> list[Path]:
    """Write the full report set for the baseline scenario; returns all paths."""
    from .growth import default_exponential, default_linear

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    written += render_device_breakdown(store, out)
    written += render_fleet_bars(
        store, profile_name, device_count, horizon_years,
        residential_reduction, global_gt, out,
    )
    written += render_growth(
        {"linear": default_linear(), "exponential": default_exponential()},
        2023, 2060, out,
    )
    written += render_sweep(
        store, profile_name, device_count, residential_reduction, global_gt,
        [float(y) for y in range(1, 11)], out,
    )
    return written
