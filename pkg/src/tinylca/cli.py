"""tinylca command line: device reports, fleet what-ifs, projections, figures.

Results go to standard output (or --out); diagnostics go to standard error.
Exit codes: 0 success, 1 computation error, 2 usage or data error. Table
output rounds to three significant figures; JSON and CSV carry raw doubles.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import click

from .datastore import DataValidationError, load_data_dir
from .exceptions import DimensionError, TinyLcaError, UnknownNameError, UnknownSectorError
from .fleet import DEFAULT_GLOBAL_EMISSIONS_GT, DEFAULT_RESIDENTIAL_REDUCTION
from .growth import ExponentialGrowth, GrowthFamily, GrowthModel, LinearGrowth, default_exponential, default_linear
from .model import FunctionalBlock
from .reports import (
    breakeven_payload,
    compare_payload,
    fleet_payload,
    footprint_payload,
    project_payload,
    resolve_device,
    sweep_payload,
)

BASELINE_DEVICE_COUNT = 250_000_000_000


def fmt3(value) -> str:
    """Three-significant-figure rendering for tables."""
    if value is None:
        return "n/a"
    if value == 0:
        return "0"
    rounded = float(f"{value:.3g}")
    if abs(rounded) >= 1e7 or abs(rounded) < 1e-4:
        return f"{value:.3g}"
    return f"{rounded:,.10g}"


def handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ZeroDivisionError as exc:
            click.echo(f"computation error: {exc}", err=True)
            sys.exit(1)
        except (DataValidationError, UnknownNameError, UnknownSectorError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except (ValueError, DimensionError, TinyLcaError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def common_options(f):
    f = click.option("--data-dir", type=click.Path(file_okay=False), default=None,
                     help="Dataset directory (defaults to the bundled data).")(f)
    f = click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]),
                     default="table", show_default=True)(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Write the result here instead of stdout.")(f)
    f = click.option("--stamp", is_flag=True,
                     help="Echo a generation timestamp to stderr (never into the data).")(f)
    return f


def _emit(text: str, out: str | None, stamp: bool) -> None:
    if stamp:
        click.echo(f"generated-at: {datetime.now(timezone.utc).isoformat()}", err=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _kv_csv(pairs: list[tuple[str, object]]) -> str:
    return _csv_text(["field", "value"], [[k, v] for k, v in pairs])


def _parse_count(_ctx, _param, value: str) -> int:
    try:
        count = int(float(value))
    except ValueError:
        raise click.BadParameter(f"not a number: {value!r}")
    if count < 0:
        raise click.BadParameter("device count must be non-negative")
    return count


def _parse_reductions(pairs: tuple[str, ...], path: str | None) -> dict[str, float]:
    reductions: dict[str, float] = {}
    if path:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
        if not isinstance(doc, dict):
            raise click.BadParameter(f"{path}: reductions file must be a JSON object")
        for name, rate in doc.items():
            reductions[str(name)] = float(rate)
    for pair in pairs:
        if "=" not in pair:
            raise click.BadParameter(f"expected sector=rate, got {pair!r}")
        name, raw = pair.split("=", 1)
        try:
            reductions[name.strip()] = float(raw)
        except ValueError:
            raise click.BadParameter(f"rate for {name!r} is not a number: {raw!r}")
    return reductions


def _parse_lifetimes(spec: str) -> list[float]:
    spec = spec.strip()
    if "-" in spec and "," not in spec:
        lo, hi = spec.split("-", 1)
        return [float(y) for y in range(int(lo), int(hi) + 1)]
    return [float(part) for part in spec.split(",") if part.strip()]


def _operational_overrides(grid_intensity: float | None) -> dict | None:
    if grid_intensity is None:
        return None
    return {"grid_intensity_g_per_kwh": grid_intensity}


@click.group()
@click.version_option(package_name="tinylca", prog_name="tinylca")
def main():
    """Life-cycle footprint reports and what-if analysis for tiny devices."""


@main.group()
def device():
    """Per-device footprint commands."""


def _device_table(payload: dict) -> str:
    lines = [
        f"Device: {payload['profile']} ({payload['tier']})  bound={payload['bound']}",
        f"{'segment':<22}{'gCO2e':>12}",
    ]
    for block in FunctionalBlock:
        grams = payload["per_block_g"].get(block.value)
        if grams is not None:
            lines.append(f"{block.value:<22}{fmt3(grams):>12}")
    lines.append(f"{'ProductUse':<22}{fmt3(payload['operational_g']):>12}")
    lines.append(f"{'Training':<22}{fmt3(payload['training_g']):>12}")
    lines.append(f"{'total':<22}{fmt3(payload['total_g']):>12}")
    return "\n".join(lines)


def _device_csv(payload: dict) -> str:
    rows = [
        [payload["profile"], payload["bound"], segment, grams]
        for segment, grams in payload["per_block_g"].items()
    ]
    rows.append([payload["profile"], payload["bound"], "ProductUse", payload["operational_g"]])
    rows.append([payload["profile"], payload["bound"], "Training", payload["training_g"]])
    rows.append([payload["profile"], payload["bound"], "total", payload["total_g"]])
    return _csv_text(["profile", "bound", "segment", "co2e_g"], rows)


@device.command("show")
@click.argument("profile")
@click.option("--bound", type=click.Choice(["low", "typical", "high"]), default=None,
              help="Component bound (defaults to the profile's own).")
@click.option("--grid-intensity", type=float, default=None,
              help="Override grid carbon intensity, gCO2e per kWh.")
@common_options
@handle_errors
def device_show(profile, bound, grid_intensity, data_dir, fmt, out, stamp):
    """Print the footprint breakdown for a named profile."""
    store = load_data_dir(data_dir)
    dev, resolved_bound = resolve_device(
        store, profile, bound, _operational_overrides(grid_intensity)
    )
    payload = footprint_payload(dev, resolved_bound)
    if fmt == "json":
        _emit(json.dumps(payload, indent=2), out, stamp)
    elif fmt == "csv":
        _emit(_device_csv(payload), out, stamp)
    else:
        _emit(_device_table(payload), out, stamp)


def _compare_table(payload: dict) -> str:
    lines = [f"Profile {payload['profile']} (bound={payload['bound']}): "
             f"{fmt3(payload['profile_total_g'])} gCO2e"]
    if payload["reference_total_g"] is not None:
        lines.append(f"Reference {payload['reference']}: {fmt3(payload['reference_total_g'])} gCO2e")
        lines.append(f"Reference / profile ratio: {fmt3(payload['ratio'])}x")
    if payload["ratio_constraints"] is not None:
        rc = payload["ratio_constraints"]
        rng = payload["implied_reference_range_g"]
        lines.append(
            f"Reference {payload['reference']} is published as {fmt3(rc['min'])}-{fmt3(rc['max'])}x "
            f"this class of device; at this profile total that implies "
            f"{fmt3(rng['min'])} to {fmt3(rng['max'])} gCO2e."
        )
    lines.append("Platform footprint tiers:")
    for tier in payload["platform_tiers"]:
        lines.append(f"  {tier['platform']:<8} power {tier.get('power', '?'):<7} footprint {tier['footprint']}")
    return "\n".join(lines)


@device.command("compare")
@click.argument("profile")
@click.argument("reference")
@click.option("--bound", type=click.Choice(["low", "typical", "high"]), default=None)
@common_options
@handle_errors
def device_compare(profile, reference, bound, data_dir, fmt, out, stamp):
    """Compare a profile's total against a reference device."""
    store = load_data_dir(data_dir)
    dev, resolved_bound = resolve_device(store, profile, bound)
    payload = compare_payload(store, dev, resolved_bound, reference)
    if fmt == "json":
        _emit(json.dumps(payload, indent=2), out, stamp)
    elif fmt == "csv":
        _emit(_kv_csv([
            ("profile", payload["profile"]),
            ("profile_total_g", payload["profile_total_g"]),
            ("reference", payload["reference"]),
            ("reference_total_g", payload["reference_total_g"]),
            ("ratio", payload["ratio"]),
        ]), out, stamp)
    else:
        _emit(_compare_table(payload), out, stamp)


def _fleet_header(params: dict) -> list[str]:
    return [
        f"[world emissions {params['global_emissions_gt']:g} GtCO2e/y; "
        f"grid {params['operational']['grid_intensity_g_per_kwh']:g} gCO2e/kWh]"
        if "operational" in params else
        f"[world emissions {params['global_emissions_gt']:g} GtCO2e/y]",
    ]


def _fleet_table(payload: dict) -> str:
    p = payload["parameters"]
    rate = payload["break_even"]["rate"]
    lines = _fleet_header(p)
    lines += [
        f"devices: {p['device_count']:,}  profile: {p['profile']} (bound={p['bound']}, "
        f"{fmt3(p['per_device_g'])} gCO2e each)  horizon: {p['horizon_years']:g} y",
        f"fleet footprint:     {fmt3(payload['fleet_footprint_mt']):>10} MtCO2e",
        f"avoided emissions:   {fmt3(payload['avoided_mt']):>10} MtCO2e",
        f"offset fraction:     {fmt3(payload['offset_fraction']):>10}",
        f"break-even rate:     {('n/a' if rate is None else f'{rate:.2%}'):>10} "
        f"(other {payload['break_even']['other_share']:.0%} of emissions)",
        f"net impact:          {fmt3(payload['net_impact_mt']):>10} MtCO2e "
        f"({'net savings' if payload['net_impact_mt'] < 0 else 'net emissions'})",
    ]
    return "\n".join(lines)


def fleet_options(f):
    f = click.option("--count", callback=_parse_count, default=str(BASELINE_DEVICE_COUNT),
                     show_default=True, help="Deployed device count (accepts 250e9 style).")(f)
    f = click.option("--profile", required=True, help="Device profile name.")(f)
    f = click.option("--bound", type=click.Choice(["low", "typical", "high"]), default=None)(f)
    f = click.option("--horizon", type=float, default=3.0, show_default=True,
                     help="Accrual horizon in years.")(f)
    f = click.option("--reduction", "reductions", multiple=True, metavar="SECTOR=RATE",
                     help="Credited sector reduction; repeatable.")(f)
    f = click.option("--reductions-file", type=click.Path(dir_okay=False, exists=True),
                     default=None, help="JSON object of sector -> rate.")(f)
    f = click.option("--global-gt", type=float, default=DEFAULT_GLOBAL_EMISSIONS_GT,
                     show_default=True, help="World annual emissions, GtCO2e.")(f)
    f = click.option("--grid-intensity", type=float, default=None,
                     help="Override grid carbon intensity, gCO2e per kWh.")(f)
    return f


@main.command()
@fleet_options
@common_options
@handle_errors
def fleet(count, profile, bound, horizon, reductions, reductions_file, global_gt,
          grid_intensity, data_dir, fmt, out, stamp):
    """Fleet footprint, avoided emissions, offset, break-even, and net impact."""
    store = load_data_dir(data_dir)
    dev, resolved_bound = resolve_device(
        store, profile, bound, _operational_overrides(grid_intensity)
    )
    payload = fleet_payload(
        store, dev, resolved_bound, count, horizon,
        _parse_reductions(reductions, reductions_file), global_gt,
    )
    if fmt == "json":
        _emit(json.dumps(payload, indent=2), out, stamp)
    elif fmt == "csv":
        _emit(_kv_csv([
            ("global_emissions_gt", payload["parameters"]["global_emissions_gt"]),
            ("device_count", payload["parameters"]["device_count"]),
            ("per_device_g", payload["parameters"]["per_device_g"]),
            ("horizon_years", payload["parameters"]["horizon_years"]),
            ("fleet_footprint_mt", payload["fleet_footprint_mt"]),
            ("avoided_mt", payload["avoided_mt"]),
            ("offset_fraction", payload["offset_fraction"]),
            ("break_even_rate", payload["break_even"]["rate"]),
            ("net_impact_mt", payload["net_impact_mt"]),
        ]), out, stamp)
    else:
        _emit(_fleet_table(payload), out, stamp)


@main.command()
@fleet_options
@common_options
@handle_errors
def breakeven(count, profile, bound, horizon, reductions, reductions_file, global_gt,
              grid_intensity, data_dir, fmt, out, stamp):
    """Reduction rate the uncovered sectors need for the fleet to break even."""
    store = load_data_dir(data_dir)
    dev, resolved_bound = resolve_device(
        store, profile, bound, _operational_overrides(grid_intensity)
    )
    resolved = _parse_reductions(reductions, reductions_file)
    if not resolved:
        resolved = {"residential": DEFAULT_RESIDENTIAL_REDUCTION}
    payload = breakeven_payload(
        store, dev, resolved_bound, count, horizon, resolved, global_gt,
    )
    if fmt == "json":
        _emit(json.dumps(payload, indent=2), out, stamp)
    elif fmt == "csv":
        _emit(_kv_csv([
            ("global_emissions_gt", payload["parameters"]["global_emissions_gt"]),
            ("fleet_footprint_mt", payload["fleet_footprint_mt"]),
            ("fixed_savings_mt", payload["fixed_savings_mt"]),
            ("other_share", payload["other_share"]),
            ("break_even_rate", payload["break_even_rate"]),
        ]), out, stamp)
    else:
        rate = payload["break_even_rate"]
        lines = [
            f"[world emissions {payload['parameters']['global_emissions_gt']:g} GtCO2e/y]",
            f"fleet footprint:  {fmt3(payload['fleet_footprint_mt'])} MtCO2e",
            f"fixed savings:    {fmt3(payload['fixed_savings_mt'])} MtCO2e "
            f"(from {', '.join(payload['parameters']['reductions']) or 'nothing'})",
            f"break-even rate:  {'n/a' if rate is None else f'{rate:.2%}'} across the other "
            f"{payload['other_share']:.0%} of emissions",
        ]
        _emit("\n".join(lines), out, stamp)


def _resolve_model(family, base_year, base_count, slope, rate) -> GrowthModel:
    family = GrowthFamily(family)
    custom = any(v is not None for v in (base_year, base_count, slope, rate))
    if not custom:
        return default_linear() if family is GrowthFamily.LINEAR else default_exponential()
    if base_year is None or base_count is None:
        raise click.BadParameter("custom models need --base-year and --base-count")
    if family is GrowthFamily.LINEAR:
        if slope is None:
            raise click.BadParameter("linear models need --slope")
        return LinearGrowth(base_year=base_year, base_count=base_count, slope=slope)
    if rate is None:
        raise click.BadParameter("exponential models need --rate")
    return ExponentialGrowth(base_year=base_year, base_count=base_count, rate=rate)


@main.command()
@click.option("--family", type=click.Choice(["linear", "exponential"]), default="linear",
              show_default=True)
@click.option("--base-year", type=int, default=None)
@click.option("--base-count", type=float, default=None, help="Billions of devices at the base year.")
@click.option("--slope", type=float, default=None, help="Billions per year (linear family).")
@click.option("--rate", type=float, default=None, help="Fractional growth per year (exponential family).")
@click.option("--thresholds", default="50,100,250,1000", show_default=True,
              help="Comma-separated thresholds in billions.")
@common_options
@handle_errors
def project(family, base_year, base_count, slope, rate, thresholds, data_dir, fmt, out, stamp):
    """First calendar year each device-count threshold is reached."""
    model = _resolve_model(family, base_year, base_count, slope, rate)
    levels = [float(part) for part in thresholds.split(",") if part.strip()]
    if not levels:
        raise click.BadParameter("no thresholds given")
    payload = project_payload(model, levels)
    if fmt == "json":
        _emit(json.dumps(payload, indent=2), out, stamp)
    elif fmt == "csv":
        rows = [[c["threshold_billion"], c["year"], c["never"]] for c in payload["crossings"]]
        _emit(_csv_text(["threshold_billion", "year", "never"], rows), out, stamp)
    else:
        lines = [f"model: {payload['model']}"]
        lines += [
            f"{fmt3(c['threshold_billion']):>8} B -> " + ("never" if c["never"] else str(c["year"]))
            for c in payload["crossings"]
        ]
        _emit("\n".join(lines), out, stamp)


@main.command()
@click.option("--profile", required=True)
@click.option("--bound", type=click.Choice(["low", "typical", "high"]), default=None)
@click.option("--count", callback=_parse_count, default=str(BASELINE_DEVICE_COUNT), show_default=True)
@click.option("--lifetimes", default="1-10", show_default=True,
              help="Range (1-10) or comma list (1,3,10) of years.")
@click.option("--residential-reduction", type=float, default=DEFAULT_RESIDENTIAL_REDUCTION,
              show_default=True)
@click.option("--global-gt", type=float, default=DEFAULT_GLOBAL_EMISSIONS_GT, show_default=True)
@click.option("--grid-intensity", type=float, default=None)
@common_options
@handle_errors
def sweep(profile, bound, count, lifetimes, residential_reduction, global_gt,
          grid_intensity, data_dir, fmt, out, stamp):
    """Sweep the device lifetime and watch offset and break-even move."""
    years = _parse_lifetimes(lifetimes)
    if not years:
        raise click.BadParameter("no lifetimes given")
    store = load_data_dir(data_dir)
    dev, resolved_bound = resolve_device(
        store, profile, bound, _operational_overrides(grid_intensity)
    )
    payload = sweep_payload(
        store, dev, resolved_bound, count,
        {"residential": residential_reduction}, global_gt, years,
    )
    header = ["lifetime_years", "fleet_footprint_mt", "residential_savings_mt",
              "offset_fraction", "break_even_rate"]
    rows = [[r[k] for k in header] for r in payload["rows"]]
    if fmt == "json":
        _emit(json.dumps(payload, indent=2), out, stamp)
    elif fmt == "csv":
        _emit(_csv_text(header, rows), out, stamp)
    else:
        lines = [f"[world emissions {payload['parameters']['global_emissions_gt']:g} GtCO2e/y]"]
        lines.append(f"{'years':>6}{'fleet Mt':>12}{'savings Mt':>12}{'offset':>9}{'break-even':>12}")
        for r in payload["rows"]:
            be = r["break_even_rate"]
            lines.append(
                f"{r['lifetime_years']:>6g}{fmt3(r['fleet_footprint_mt']):>12}"
                f"{fmt3(r['residential_savings_mt']):>12}{r['offset_fraction']:>9.2f}"
                f"{('n/a' if be is None else f'{be:.2%}'):>12}"
            )
        _emit("\n".join(lines), out, stamp)


@main.command()
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--profile", default="high-cost", show_default=True)
@click.option("--count", callback=_parse_count, default=str(BASELINE_DEVICE_COUNT), show_default=True)
@click.option("--horizon", type=float, default=3.0, show_default=True)
@click.option("--residential-reduction", type=float, default=DEFAULT_RESIDENTIAL_REDUCTION,
              show_default=True)
@click.option("--global-gt", type=float, default=DEFAULT_GLOBAL_EMISSIONS_GT, show_default=True)
@click.option("--data-dir", type=click.Path(file_okay=False), default=None)
@handle_errors
def report(out_dir, profile, count, horizon, residential_reduction, global_gt, data_dir):
    """Render the standard figure set (PNG + CSV) for the baseline scenario."""
    from .figures import render_all

    store = load_data_dir(data_dir)
    paths = render_all(
        store, out_dir, profile_name=profile, device_count=count,
        horizon_years=horizon, residential_reduction=residential_reduction,
        global_gt=global_gt,
    )
    for path in paths:
        click.echo(str(path))


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", type=click.Path(file_okay=False), default=None)
@click.option("--static", "static_dir", type=click.Path(file_okay=False, exists=True), default=None,
              help="Directory of built UI assets to serve at /.")
@click.option("--cors", "cors_origins", multiple=True,
              help="Additional allowed CORS origin; repeatable.")
@handle_errors
def serve(port, host, data_dir, static_dir, cors_origins):
    """Run the what-if HTTP service (and optionally the explorer UI)."""
    import uvicorn

    from .service import create_app

    app = create_app(data_dir=data_dir, static_dir=static_dir,
                     cors_origins=list(cors_origins) or None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
