"""tinylca: life-cycle footprint engine and what-if tool for tiny devices."""

from .exceptions import DimensionError, TinyLcaError, UnknownNameError, UnknownSectorError
from .units import HOURS_PER_YEAR, Dimension, Quantity, Unit, convert, ratio
from .model import (
    Bound,
    ComponentEntry,
    DeviceProfile,
    DeviceTier,
    FootprintBreakdown,
    FunctionalBlock,
    Indicator,
    LifeCycleStage,
    OperationalParams,
    StageProfile,
    compare,
    embodied_footprint,
    indicator_breakdown,
    operational_footprint,
    total_footprint,
)
from .fleet import (
    ALTERNATE_GLOBAL_EMISSIONS_GT,
    DEFAULT_GLOBAL_EMISSIONS_GT,
    DEFAULT_RESIDENTIAL_REDUCTION,
    FleetScenario,
    GlobalEmissions,
    NetImpact,
    SectorShares,
    SweepRow,
    avoided_emissions,
    break_even_rate,
    fleet_footprint,
    lifetime_sweep,
    net_impact,
    offset_fraction,
)
from .growth import (
    CrossingResult,
    ExponentialGrowth,
    GrowthFamily,
    GrowthModel,
    LinearGrowth,
    default_exponential,
    default_linear,
    first_crossing,
    fit,
    project,
)
from .datastore import (
    ComponentDatabase,
    DataStore,
    DataValidationError,
    ReferenceCatalog,
    ReferenceDevice,
    ValidationIssue,
    ValidationReport,
    bundled_data_dir,
    load_component_db,
    load_data_dir,
    load_device_profile,
    load_references,
    load_sector_shares,
    load_stage_profiles,
)

__version__ = "0.1.0"
