"""Stateless HTTP facade over the engine for the explorer UI and scripts.

Datasets load once at app creation and are immutable afterwards, so any
number of concurrent requests can share them without locks. Responses are
built by the same payload builders the CLI uses; for identical inputs the
two produce identical JSON.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

from .datastore import DataStore, ValidationReport, device_profile_from_dict, load_data_dir
from .exceptions import TinyLcaError, UnknownNameError, UnknownSectorError
from .fleet import DEFAULT_GLOBAL_EMISSIONS_GT
from .growth import ExponentialGrowth, GrowthFamily, GrowthModel, LinearGrowth, default_exponential, default_linear, fit
from .model import Bound, DeviceProfile
from .reports import (
    apply_operational_overrides,
    breakeven_payload,
    fleet_payload,
    footprint_payload,
    model_dict,
    profiles_payload,
    project_payload,
    resolve_device,
)

API_PREFIX = "/api/v1"


class OperationalOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")

    power_mw: float | None = Field(default=None, ge=0)
    duty_factor: float | None = Field(default=None, ge=0, le=1)
    lifetime_years: float | None = Field(default=None, gt=0)
    grid_intensity_g_per_kwh: float | None = Field(default=None, ge=0)
    charge_efficiency: float | None = Field(default=None, gt=0, le=1)

    def as_dict(self) -> dict:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class FootprintRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = 1
    profile: str | None = None
    device: dict | None = None
    bound: str | None = None
    operational: OperationalOverrides | None = None
    training_amortized_g: float | None = Field(default=None, ge=0)


class FleetRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = 1
    count: int = Field(ge=0)
    profile: str | None = None
    device: dict | None = None
    bound: str | None = None
    horizon_years: float = Field(default=3.0, gt=0)
    reductions: dict[str, float] = Field(default_factory=dict)
    global_gt: float = Field(default=DEFAULT_GLOBAL_EMISSIONS_GT, gt=0)
    operational: OperationalOverrides | None = None


class ProjectRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = 1
    family: str = "linear"
    base_year: int | None = None
    base_count_billion: float | None = None
    slope_billion_per_year: float | None = None
    rate_per_year: float | None = None
    points: list[tuple[int, float]] | None = None
    thresholds: list[float] = Field(min_length=1)


def _resolve_request_device(
    store: DataStore,
    profile: str | None,
    device: dict | None,
    bound: str | None,
    operational: OperationalOverrides | None,
    training_amortized_g: float | None,
) -> tuple[DeviceProfile, Bound]:
    if (profile is None) == (device is None):
        raise HTTPException(
            status_code=400,
            detail="exactly one of 'profile' or 'device' is required",
        )
    overrides = operational.as_dict() if operational is not None else None
    if bound is not None:
        try:
            Bound(bound)
        except ValueError:
            raise HTTPException(
                status_code=400,
                detail=f"bound must be one of low/typical/high, got {bound!r}",
            ) from None
    if profile is not None:
        return resolve_device(store, profile, bound, overrides, training_amortized_g)
    doc = {"schema_version": 1, "name": "inline", **device}
    report = ValidationReport()
    dev = device_profile_from_dict(doc, store.components, "<request body>", report)
    if not report.ok or dev is None:
        raise HTTPException(
            status_code=400,
            detail=[{"loc": issue.path, "msg": issue.message} for issue in report.errors],
        )
    resolved_bound = dev.default_bound if bound is None else Bound(bound)
    if overrides:
        from dataclasses import replace

        dev = replace(dev, operational=apply_operational_overrides(dev.operational, **overrides))
    if training_amortized_g is not None:
        from dataclasses import replace

        from .units import Quantity, Unit

        dev = replace(dev, training_amortized=Quantity(training_amortized_g, Unit.GCO2E))
    return dev, resolved_bound


def _resolve_growth_model(body: ProjectRequest) -> GrowthModel:
    try:
        family = GrowthFamily(body.family)
    except ValueError:
        raise HTTPException(
            status_code=400,
            detail=f"family must be linear or exponential, got {body.family!r}",
        ) from None
    try:
        if body.points is not None:
            return fit(body.points, family)
        custom = any(
            v is not None
            for v in (body.base_year, body.base_count_billion,
                      body.slope_billion_per_year, body.rate_per_year)
        )
        if not custom:
            return default_linear() if family is GrowthFamily.LINEAR else default_exponential()
        if body.base_year is None or body.base_count_billion is None:
            raise ValueError("custom models need base_year and base_count_billion")
        if family is GrowthFamily.LINEAR:
            if body.slope_billion_per_year is None:
                raise ValueError("linear models need slope_billion_per_year")
            return LinearGrowth(body.base_year, body.base_count_billion, body.slope_billion_per_year)
        if body.rate_per_year is None:
            raise ValueError("exponential models need rate_per_year")
        return ExponentialGrowth(body.base_year, body.base_count_billion, body.rate_per_year)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def create_app(
    data_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    """Build the service with datasets loaded once from ``data_dir``."""
    store = load_data_dir(data_dir)
    app = FastAPI(title="tinylca what-if service", version="1.0")

    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(_request: Request, exc: RequestValidationError):
        # Body validation problems are client errors: 400 with field locations.
        return JSONResponse(status_code=400, content={"detail": jsonable_encoder(exc.errors())})

    @app.exception_handler(UnknownNameError)
    async def _unknown_name_handler(_request: Request, exc: UnknownNameError):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(UnknownSectorError)
    async def _unknown_sector_handler(_request: Request, exc: UnknownSectorError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error_handler(_request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(TinyLcaError)
    async def _domain_error_handler(_request: Request, exc: TinyLcaError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get(API_PREFIX + "/profiles")
    def list_profiles():
        return profiles_payload(store)

    @app.post(API_PREFIX + "/footprint")
    def footprint(body: FootprintRequest):
        device, bound = _resolve_request_device(
            store, body.profile, body.device, body.bound,
            body.operational, body.training_amortized_g,
        )
        return footprint_payload(device, bound)

    @app.post(API_PREFIX + "/fleet/net")
    def fleet_net(body: FleetRequest):
        device, bound = _resolve_request_device(
            store, body.profile, body.device, body.bound, body.operational, None,
        )
        return fleet_payload(
            store, device, bound, body.count, body.horizon_years,
            body.reductions, body.global_gt,
        )

    @app.post(API_PREFIX + "/fleet/breakeven")
    def fleet_breakeven(body: FleetRequest):
        device, bound = _resolve_request_device(
            store, body.profile, body.device, body.bound, body.operational, None,
        )
        return breakeven_payload(
            store, device, bound, body.count, body.horizon_years,
            body.reductions, body.global_gt,
        )

    @app.post(API_PREFIX + "/project")
    def project(body: ProjectRequest):
        model = _resolve_growth_model(body)
        payload = project_payload(model, body.thresholds)
        unreachable = [c["threshold_billion"] for c in payload["crossings"] if c["never"]]
        if unreachable:
            raise HTTPException(
                status_code=422,
                detail={
                    "reason": "never",
                    "unreachable_thresholds": unreachable,
                    "model": model_dict(model),
                },
            )
        return payload

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
