"""Loading and validation for all bundled and user datasets.

Every loader is all-or-nothing: a file either validates completely and
yields an immutable value, or the load raises :class:`DataValidationError`
carrying a report with file/path locations for each problem. Unknown
top-level keys are tolerated with a warning; unknown nested keys are errors.
Loaded values are plain frozen dataclasses, safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from importlib import resources

from .exceptions import TinyLcaError, UnknownNameError
from .fleet import SectorShares
from .model import (
    Bound,
    ComponentEntry,
    DeviceProfile,
    DeviceTier,
    FunctionalBlock,
    Indicator,
    LifeCycleStage,
    OperationalParams,
    StageProfile,
)
from .units import Quantity, Unit

SCHEMA_VERSION = 1

#: When every stage is named, the stated percentages must fall in this band
#: before being rescaled to exactly one.
STAGE_SUM_BAND = (97.0, 103.0)

_SECTOR_FILE_TOL = 1e-3
_REFERENCE_SHARE_TOL = 1e-2


@dataclass(frozen=True)
class ValidationIssue:
    file: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.file}: {self.path}: {self.message}"


@dataclass
class ValidationReport:
    errors: list[ValidationIssue] = field(default_factory=list)
    warnings: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, file: str, path: str, message: str) -> None:
        self.errors.append(ValidationIssue(file, path, message))

    def warn(self, file: str, path: str, message: str) -> None:
        self.warnings.append(ValidationIssue(file, path, message))

    def merge(self, other: "ValidationReport") -> None:
        self.errors.extend(other.errors)
        self.warnings.extend(other.warnings)


class DataValidationError(TinyLcaError):
    """A dataset failed validation; nothing was loaded."""

    def __init__(self, report: ValidationReport):
        self.report = report
        lines = [str(issue) for issue in report.errors]
        super().__init__("dataset validation failed:\n" + "\n".join(lines))


@dataclass(frozen=True)
class ComponentDatabase:
    """Component entries keyed by (block, label), with a citation per entry."""

    entries: dict[tuple[FunctionalBlock, str], ComponentEntry]
    sources: dict[tuple[FunctionalBlock, str], str]
    source: str = ""

    def get(self, block: FunctionalBlock, label: str) -> ComponentEntry:
        try:
            return self.entries[(block, label)]
        except KeyError:
            available = [f"{b.value}/{l}" for b, l in sorted(
                self.entries, key=lambda k: (k[0].value, k[1]))]
            raise UnknownNameError("component", f"{block.value}/{label}", available) from None

    @property
    def blocks_present(self) -> set[FunctionalBlock]:
        return {block for block, _ in self.entries}

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "source": self.source,
            "entries": [
                {
                    "block": entry.block.value,
                    "label": entry.label,
                    "low_g": entry.low.in_unit(Unit.GCO2E),
                    "typical_g": entry.typical.in_unit(Unit.GCO2E),
                    "high_g": entry.high.in_unit(Unit.GCO2E),
                    "source": self.sources.get((entry.block, entry.label), ""),
                }
                for entry in sorted(
                    self.entries.values(), key=lambda e: (e.block.value, e.label)
                )
            ],
        }


@dataclass(frozen=True)
class ReferenceDevice:
    """A comparison baseline: an absolute total, or a ratio band, or both."""

    name: str
    total: Quantity | None
    stage_shares: dict[LifeCycleStage, float] | None = None
    ratio_constraints: tuple[float, float] | None = None
    source: str = ""

    def __post_init__(self):
        if self.total is None and self.ratio_constraints is None:
            raise ValueError(f"reference '{self.name}' needs a total or a ratio band")
        if self.stage_shares is not None:
            total_share = sum(self.stage_shares.values())
            if abs(total_share - 1.0) > _REFERENCE_SHARE_TOL + 1e-12:
                raise ValueError(
                    f"reference '{self.name}' stage shares sum to {total_share}"
                )


@dataclass(frozen=True)
class ReferenceCatalog:
    devices: dict[str, ReferenceDevice]
    platform_tiers: tuple[dict, ...]
    source: str = ""

    def get(self, name: str) -> ReferenceDevice:
        try:
            return self.devices[name]
        except KeyError:
            raise UnknownNameError("reference device", name, list(self.devices)) from None


@dataclass(frozen=True)
class DataStore:
    """Everything the CLI and service need, loaded once and immutable."""

    components: ComponentDatabase
    profiles: dict[str, DeviceProfile]
    indicators: dict[Indicator, StageProfile]
    sectors: SectorShares
    references: ReferenceCatalog
    data_dir: Path

    def profile(self, name: str) -> DeviceProfile:
        try:
            return self.profiles[name]
        except KeyError:
            raise UnknownNameError("profile", name, list(self.profiles)) from None


def bundled_data_dir() -> Path:
    """Directory of the datasets shipped inside the package."""
    return Path(str(resources.files("tinylca").joinpath("data")))


def _read_json(path: Path, report: ValidationReport) -> dict | None:
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except FileNotFoundError:
        report.error(str(path), "$", "file not found")
        return None
    except json.JSONDecodeError as exc:
        report.error(str(path), "$", f"not valid JSON: {exc}")
        return None
    if not isinstance(doc, dict):
        report.error(str(path), "$", "top level must be a JSON object")
        return None
    return doc


def _check_keys(
    doc: dict,
    known: set[str],
    file: str,
    path: str,
    report: ValidationReport,
    nested: bool,
) -> None:
    for key in doc:
        if key not in known:
            if nested:
                report.error(file, f"{path}.{key}", "unknown key")
            else:
                report.warn(file, f"{path}.{key}", "unknown top-level key (ignored)")


def _check_schema_version(doc: dict, file: str, report: ValidationReport) -> None:
    version = doc.get("schema_version")
    if version is None:
        report.error(file, "$.schema_version", "missing required schema_version")
    elif version != SCHEMA_VERSION:
        report.error(
            file, "$.schema_version", f"unsupported schema_version {version!r}, expected {SCHEMA_VERSION}"
        )


def _number(value, file: str, path: str, report: ValidationReport, minimum: float | None = 0.0) -> float | None:
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(float(value)):
        report.error(file, path, f"expected a finite number, got {value!r}")
        return None
    value = float(value)
    if minimum is not None and value < minimum:
        report.error(file, path, f"must be >= {minimum:g}, got {value:g}")
        return None
    return value


def load_component_db(path: str | Path, report: ValidationReport | None = None) -> ComponentDatabase:
    """Load and fully validate the component footprint database."""
    path = Path(path)
    rpt = ValidationReport()
    doc = _read_json(path, rpt)
    file = str(path)
    entries: dict[tuple[FunctionalBlock, str], ComponentEntry] = {}
    sources: dict[tuple[FunctionalBlock, str], str] = {}

    if doc is not None:
        _check_schema_version(doc, file, rpt)
        _check_keys(doc, {"schema_version", "source", "entries"}, file, "$", rpt, nested=False)
        raw_entries = doc.get("entries")
        if not isinstance(raw_entries, list):
            rpt.error(file, "$.entries", "missing or not a list")
            raw_entries = []
        for i, raw in enumerate(raw_entries):
            loc = f"$.entries[{i}]"
            if not isinstance(raw, dict):
                rpt.error(file, loc, "entry must be an object")
                continue
            _check_keys(
                raw, {"block", "label", "low_g", "typical_g", "high_g", "source"},
                file, loc, rpt, nested=True,
            )
            label = raw.get("label")
            if not isinstance(label, str) or not label:
                rpt.error(file, f"{loc}.label", "missing or empty label")
                continue
            try:
                block = FunctionalBlock.from_label(raw.get("block", ""))
            except ValueError as exc:
                rpt.error(file, f"{loc}.block", str(exc))
                continue
            bounds = {}
            for key in ("low_g", "typical_g", "high_g"):
                num = _number(raw.get(key), file, f"{loc}.{key}", rpt)
                if num is None:
                    break
                bounds[key] = num
            if len(bounds) < 3:
                continue
            try:
                entry = ComponentEntry(
                    block=block,
                    label=label,
                    low=Quantity(bounds["low_g"], Unit.GCO2E),
                    typical=Quantity(bounds["typical_g"], Unit.GCO2E),
                    high=Quantity(bounds["high_g"], Unit.GCO2E),
                )
            except ValueError as exc:
                rpt.error(file, loc, str(exc))
                continue
            key = (block, label)
            if key in entries:
                rpt.error(file, loc, f"duplicate entry for ({block.value}, {label})")
                continue
            entries[key] = entry
            sources[key] = str(raw.get("source", ""))

    if not rpt.ok:
        raise DataValidationError(rpt)
    if report is not None:
        report.merge(rpt)
    return ComponentDatabase(entries=entries, sources=sources, source=str(doc.get("source", "")))


def _assign_stage_shares(
    raw: dict,
    file: str,
    loc: str,
    rpt: ValidationReport,
) -> dict[LifeCycleStage, float] | None:
    """Resolve a stage_percent/stage_fraction map plus remainder directive.

    Works in the file's own scale (percent or fraction) to avoid conversion
    drift, so serializing a loaded profile and reloading it is exact.
    """
    has_pct = "stage_percent" in raw
    has_frac = "stage_fraction" in raw
    if has_pct == has_frac:
        rpt.error(file, loc, "exactly one of stage_percent / stage_fraction is required")
        return None
    key, full = ("stage_percent", 100.0) if has_pct else ("stage_fraction", 1.0)
    stated = raw.get(key)
    if not isinstance(stated, dict):
        rpt.error(file, f"{loc}.{key}", "must be an object of stage -> number")
        return None

    values: dict[LifeCycleStage, float] = {}
    for stage_name, value in stated.items():
        try:
            stage = LifeCycleStage(stage_name)
        except ValueError:
            rpt.error(
                file, f"{loc}.{key}.{stage_name}",
                "unknown stage; valid: " + ", ".join(s.value for s in LifeCycleStage),
            )
            return None
        num = _number(value, file, f"{loc}.{key}.{stage_name}", rpt)
        if num is None:
            return None
        values[stage] = num

    directive = raw.get("remainder", "proportional")
    named_sum = sum(values.values())
    unnamed = [stage for stage in LifeCycleStage if stage not in values]
    residual = full - named_sum

    if residual < 0 or not unnamed:
        # Nothing can absorb the residual; rescale if within the band.
        band_lo, band_hi = (b / 100.0 * full for b in STAGE_SUM_BAND)
        if not band_lo <= named_sum <= band_hi:
            rpt.error(
                file, f"{loc}.{key}",
                f"stated shares sum to {named_sum / full * 100:g}%, outside "
                f"[{STAGE_SUM_BAND[0]:g}%, {STAGE_SUM_BAND[1]:g}%]; too inconsistent to normalize",
            )
            return None
        denom = full if abs(named_sum - full) <= 1e-9 * full else named_sum
        return {stage: v / denom for stage, v in values.items()}

    if directive == "proportional":
        for stage in unnamed:
            values[stage] = residual / len(unnamed)
    else:
        try:
            target = LifeCycleStage(directive)
        except ValueError:
            rpt.error(
                file, f"{loc}.remainder",
                f"must be 'proportional' or a stage name, got {directive!r}",
            )
            return None
        values[target] = values.get(target, 0.0) + residual
    return {stage: values.get(stage, 0.0) / full for stage in LifeCycleStage}


def load_stage_profiles(path: str | Path, report: ValidationReport | None = None) -> list[StageProfile]:
    """Load per-indicator stage-share profiles (one per indicator at most)."""
    path = Path(path)
    rpt = ValidationReport()
    doc = _read_json(path, rpt)
    file = str(path)
    profiles: list[StageProfile] = []

    if doc is not None:
        _check_schema_version(doc, file, rpt)
        _check_keys(doc, {"schema_version", "source", "profiles"}, file, "$", rpt, nested=False)
        raw_profiles = doc.get("profiles")
        if not isinstance(raw_profiles, list):
            rpt.error(file, "$.profiles", "missing or not a list")
            raw_profiles = []
        seen: set[Indicator] = set()
        for i, raw in enumerate(raw_profiles):
            loc = f"$.profiles[{i}]"
            if not isinstance(raw, dict):
                rpt.error(file, loc, "profile must be an object")
                continue
            _check_keys(
                raw,
                {"indicator", "total", "unit", "total_status", "stage_percent", "stage_fraction", "remainder"},
                file, loc, rpt, nested=True,
            )
            try:
                indicator = Indicator.from_label(str(raw.get("indicator", "")))
            except ValueError as exc:
                rpt.error(file, f"{loc}.indicator", str(exc))
                continue
            if indicator in seen:
                rpt.error(file, f"{loc}.indicator", f"duplicate profile for {indicator.label}")
                continue
            seen.add(indicator)
            unit_symbol = raw.get("unit", "")
            if unit_symbol != indicator.unit.symbol:
                rpt.error(
                    file, f"{loc}.unit",
                    f"{indicator.label} totals must be in {indicator.unit.symbol}, got {unit_symbol!r}",
                )
                continue
            total = _number(raw.get("total"), file, f"{loc}.total", rpt)
            if total is None:
                continue
            shares = _assign_stage_shares(raw, file, loc, rpt)
            if shares is None:
                continue
            try:
                profiles.append(
                    StageProfile(
                        indicator=indicator,
                        total=Quantity(total, indicator.unit),
                        shares=shares,
                        total_note=str(raw.get("total_status", "")),
                    )
                )
            except (ValueError, TinyLcaError) as exc:
                rpt.error(file, loc, str(exc))

    if not rpt.ok:
        raise DataValidationError(rpt)
    if report is not None:
        report.merge(rpt)
    return profiles


def load_sector_shares(path: str | Path, report: ValidationReport | None = None) -> SectorShares:
    """Load the sector-share table; requires a residential sector."""
    path = Path(path)
    rpt = ValidationReport()
    doc = _read_json(path, rpt)
    file = str(path)
    shares: dict[str, float] = {}

    if doc is not None:
        _check_schema_version(doc, file, rpt)
        _check_keys(doc, {"schema_version", "source", "shares"}, file, "$", rpt, nested=False)
        raw_shares = doc.get("shares")
        if not isinstance(raw_shares, dict) or not raw_shares:
            rpt.error(file, "$.shares", "missing or empty shares object")
        else:
            for name, value in raw_shares.items():
                num = _number(value, file, f"$.shares.{name}", rpt)
                if num is None:
                    continue
                if num > 1.0:
                    rpt.error(file, f"$.shares.{name}", f"share must be <= 1, got {num:g}")
                    continue
                shares[name] = num
            if "residential" not in raw_shares:
                rpt.error(file, "$.shares", "a 'residential' sector is required")
            total = sum(shares.values())
            if shares and abs(total - 1.0) > _SECTOR_FILE_TOL:
                rpt.error(file, "$.shares", f"shares sum to {total:g}, expected 1 within {_SECTOR_FILE_TOL:g}")

    if not rpt.ok:
        raise DataValidationError(rpt)
    if report is not None:
        report.merge(rpt)
    total = sum(shares.values())
    if abs(total - 1.0) > 1e-12:
        shares = {name: value / total for name, value in shares.items()}
    return SectorShares(shares=shares)


def device_profile_from_dict(
    doc: dict,
    components: ComponentDatabase,
    file: str,
    rpt: ValidationReport,
) -> DeviceProfile | None:
    """Build a device profile from an already-parsed document.

    Component references are resolved against the database; entries carrying
    their own low/typical/high grams are taken inline. Returns ``None`` and
    records issues on any problem; never a partially resolved profile.
    """
    resolved: list[ComponentEntry] = []
    tier = DeviceTier.CUSTOM
    default_bound = Bound.TYPICAL
    operational = None
    training = 0.0

    _check_schema_version(doc, file, rpt)
    _check_keys(
        doc,
        {"schema_version", "name", "tier", "default_bound", "description",
         "components", "operational", "training_amortized_g"},
        file, "$", rpt, nested=False,
    )
    name = str(doc.get("name", ""))
    if not name:
        rpt.error(file, "$.name", "missing profile name")
    if "tier" in doc:
        try:
            tier = DeviceTier(doc["tier"])
        except ValueError:
            rpt.error(
                file, "$.tier",
                f"unknown tier {doc['tier']!r}; valid: " + ", ".join(t.value for t in DeviceTier),
            )
    if "default_bound" in doc:
        try:
            default_bound = Bound(doc["default_bound"])
        except ValueError:
            rpt.error(file, "$.default_bound", f"must be low/typical/high, got {doc['default_bound']!r}")

    raw_components = doc.get("components")
    if not isinstance(raw_components, list):
        rpt.error(file, "$.components", "missing or not a list")
        raw_components = []
    for i, raw in enumerate(raw_components):
        loc = f"$.components[{i}]"
        if not isinstance(raw, dict):
            rpt.error(file, loc, "component must be an object")
            continue
        _check_keys(
            raw, {"block", "label", "low_g", "typical_g", "high_g"},
            file, loc, rpt, nested=True,
        )
        try:
            block = FunctionalBlock.from_label(raw.get("block", ""))
        except ValueError as exc:
            rpt.error(file, f"{loc}.block", str(exc))
            continue
        label = raw.get("label")
        if not isinstance(label, str) or not label:
            rpt.error(file, f"{loc}.label", "missing or empty label")
            continue
        inline_keys = {"low_g", "typical_g", "high_g"} & raw.keys()
        if inline_keys:
            if len(inline_keys) < 3:
                rpt.error(file, loc, "inline components need all of low_g, typical_g, high_g")
                continue
            bounds = {}
            for key in ("low_g", "typical_g", "high_g"):
                num = _number(raw.get(key), file, f"{loc}.{key}", rpt)
                if num is None:
                    break
                bounds[key] = num
            if len(bounds) < 3:
                continue
            try:
                resolved.append(
                    ComponentEntry(
                        block=block,
                        label=label,
                        low=Quantity(bounds["low_g"], Unit.GCO2E),
                        typical=Quantity(bounds["typical_g"], Unit.GCO2E),
                        high=Quantity(bounds["high_g"], Unit.GCO2E),
                    )
                )
            except ValueError as exc:
                rpt.error(file, loc, str(exc))
        else:
            try:
                resolved.append(components.get(block, label))
            except UnknownNameError:
                rpt.error(
                    file, loc,
                    f"unresolved component reference ({block.value}, {label}); "
                    "not in the component database",
                )

    raw_op = doc.get("operational")
    if not isinstance(raw_op, dict):
        rpt.error(file, "$.operational", "missing or not an object")
    else:
        _check_keys(
            raw_op,
            {"power_mw", "duty_factor", "lifetime_years", "grid_intensity_g_per_kwh", "charge_efficiency"},
            file, "$.operational", rpt, nested=True,
        )
        try:
            operational = OperationalParams.of(
                power_mw=float(raw_op.get("power_mw", 0.0)),
                duty_factor=float(raw_op.get("duty_factor", 1.0)),
                lifetime_years=float(raw_op.get("lifetime_years", 3.0)),
                grid_intensity_g_per_kwh=float(raw_op.get("grid_intensity_g_per_kwh", 475.0)),
                charge_efficiency=float(raw_op.get("charge_efficiency", 1.0)),
            )
        except (TypeError, ValueError, TinyLcaError) as exc:
            rpt.error(file, "$.operational", f"invalid operational parameters: {exc}")

    if "training_amortized_g" in doc:
        num = _number(doc["training_amortized_g"], file, "$.training_amortized_g", rpt)
        if num is not None:
            training = num

    if not rpt.ok or operational is None:
        return None
    return DeviceProfile(
        name=name,
        tier=tier,
        components=tuple(resolved),
        operational=operational,
        training_amortized=Quantity(training, Unit.GCO2E),
        default_bound=default_bound,
        description=str(doc.get("description", "")),
    )


def load_device_profile(
    path: str | Path,
    components: ComponentDatabase,
    report: ValidationReport | None = None,
) -> DeviceProfile:
    """Load one device profile, resolving component references against the database."""
    path = Path(path)
    rpt = ValidationReport()
    doc = _read_json(path, rpt)
    profile = None
    if doc is not None:
        profile = device_profile_from_dict(doc, components, str(path), rpt)
    if not rpt.ok or profile is None:
        raise DataValidationError(rpt)
    if report is not None:
        report.merge(rpt)
    return profile


def load_references(path: str | Path, report: ValidationReport | None = None) -> ReferenceCatalog:
    """Load reference devices (absolute totals or ratio bands) and platform tiers."""
    path = Path(path)
    rpt = ValidationReport()
    doc = _read_json(path, rpt)
    file = str(path)
    devices: dict[str, ReferenceDevice] = {}
    tiers: list[dict] = []

    if doc is not None:
        _check_schema_version(doc, file, rpt)
        _check_keys(
            doc, {"schema_version", "source", "devices", "platform_tiers"},
            file, "$", rpt, nested=False,
        )
        raw_devices = doc.get("devices")
        if not isinstance(raw_devices, list):
            rpt.error(file, "$.devices", "missing or not a list")
            raw_devices = []
        for i, raw in enumerate(raw_devices):
            loc = f"$.devices[{i}]"
            if not isinstance(raw, dict):
                rpt.error(file, loc, "device must be an object")
                continue
            _check_keys(
                raw, {"name", "total_g", "stage_shares", "ratio_constraints", "source"},
                file, loc, rpt, nested=True,
            )
            name = raw.get("name")
            if not isinstance(name, str) or not name:
                rpt.error(file, f"{loc}.name", "missing or empty name")
                continue
            if name in devices:
                rpt.error(file, f"{loc}.name", f"duplicate reference device '{name}'")
                continue
            total = None
            if "total_g" in raw:
                num = _number(raw["total_g"], file, f"{loc}.total_g", rpt)
                if num is not None:
                    total = Quantity(num, Unit.GCO2E)
            shares = None
            if "stage_shares" in raw:
                raw_shares = raw["stage_shares"]
                if not isinstance(raw_shares, dict):
                    rpt.error(file, f"{loc}.stage_shares", "must be an object")
                    continue
                shares = {}
                bad = False
                for stage_name, value in raw_shares.items():
                    try:
                        stage = LifeCycleStage(stage_name)
                    except ValueError:
                        rpt.error(file, f"{loc}.stage_shares.{stage_name}", "unknown stage")
                        bad = True
                        break
                    num = _number(value, file, f"{loc}.stage_shares.{stage_name}", rpt)
                    if num is None:
                        bad = True
                        break
                    shares[stage] = num
                if bad:
                    continue
            constraints = None
            if "ratio_constraints" in raw:
                raw_rc = raw["ratio_constraints"]
                if not isinstance(raw_rc, dict) or set(raw_rc) != {"min", "max"}:
                    rpt.error(file, f"{loc}.ratio_constraints", "must be an object with min and max")
                    continue
                lo = _number(raw_rc["min"], file, f"{loc}.ratio_constraints.min", rpt)
                hi = _number(raw_rc["max"], file, f"{loc}.ratio_constraints.max", rpt)
                if lo is None or hi is None:
                    continue
                if lo > hi:
                    rpt.error(file, f"{loc}.ratio_constraints", f"min {lo:g} exceeds max {hi:g}")
                    continue
                constraints = (lo, hi)
            try:
                devices[name] = ReferenceDevice(
                    name=name,
                    total=total,
                    stage_shares=shares,
                    ratio_constraints=constraints,
                    source=str(raw.get("source", "")),
                )
            except ValueError as exc:
                rpt.error(file, loc, str(exc))

        raw_tiers = doc.get("platform_tiers", [])
        if not isinstance(raw_tiers, list):
            rpt.error(file, "$.platform_tiers", "must be a list")
        else:
            for i, raw in enumerate(raw_tiers):
                if not isinstance(raw, dict) or "platform" not in raw or "footprint" not in raw:
                    rpt.error(file, f"$.platform_tiers[{i}]", "tier needs platform and footprint keys")
                    continue
                tiers.append(dict(raw))

    if not rpt.ok:
        raise DataValidationError(rpt)
    if report is not None:
        report.merge(rpt)
    return ReferenceCatalog(
        devices=devices, platform_tiers=tuple(tiers), source=str(doc.get("source", ""))
    )


def load_data_dir(data_dir: str | Path | None = None, report: ValidationReport | None = None) -> DataStore:
    """Load a complete data tree (bundled by default): components, profiles,
    indicators, sectors, references."""
    base = Path(data_dir) if data_dir is not None else bundled_data_dir()
    rpt = ValidationReport()

    components = load_component_db(base / "components.json", rpt)
    profiles: dict[str, DeviceProfile] = {}
    profiles_dir = base / "profiles"
    if profiles_dir.is_dir():
        for path in sorted(profiles_dir.glob("*.json")):
            profile = load_device_profile(path, components, rpt)
            if profile.name in profiles:
                bad = ValidationReport()
                bad.error(str(path), "$.name", f"duplicate profile name '{profile.name}'")
                raise DataValidationError(bad)
            profiles[profile.name] = profile
    stage_profiles = load_stage_profiles(base / "indicators.json", rpt)
    sectors = load_sector_shares(base / "sectors.json", rpt)
    references = load_references(base / "references.json", rpt)

    if report is not None:
        report.merge(rpt)
    return DataStore(
        components=components,
        profiles=profiles,
        indicators={sp.indicator: sp for sp in stage_profiles},
        sectors=sectors,
        references=references,
        data_dir=base,
    )


def stage_profile_to_json_dict(profile: StageProfile) -> dict:
    """File form of a loaded stage profile; reloading reproduces it exactly."""
    return {
        "indicator": profile.indicator.label,
        "total": profile.total.magnitude,
        "unit": profile.indicator.unit.symbol,
        "total_status": profile.total_note,
        "stage_fraction": {stage.value: share for stage, share in profile.shares.items()},
    }


def device_profile_to_json_dict(profile: DeviceProfile) -> dict:
    """File form of a loaded device profile, with component values inlined."""
    op = profile.operational
    return {
        "schema_version": SCHEMA_VERSION,
        "name": profile.name,
        "tier": profile.tier.value,
        "default_bound": profile.default_bound.value,
        "description": profile.description,
        "components": [
            {
                "block": entry.block.value,
                "label": entry.label,
                "low_g": entry.low.in_unit(Unit.GCO2E),
                "typical_g": entry.typical.in_unit(Unit.GCO2E),
                "high_g": entry.high.in_unit(Unit.GCO2E),
            }
            for entry in profile.components
        ],
        "operational": {
            "power_mw": op.power.in_unit(Unit.MILLIWATT),
            "duty_factor": op.duty_factor,
            "lifetime_years": op.lifetime.in_unit(Unit.YEAR),
            "grid_intensity_g_per_kwh": op.grid_intensity.in_unit(Unit.GCO2E_PER_KWH),
            "charge_efficiency": op.charge_efficiency,
        },
        "training_amortized_g": profile.training_amortized.in_unit(Unit.GCO2E),
    }


def sector_shares_to_json_dict(sectors: SectorShares) -> dict:
    return {"schema_version": SCHEMA_VERSION, "shares": dict(sectors.shares)}
