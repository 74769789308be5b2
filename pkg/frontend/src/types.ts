/** Response shapes of the /api/v1 endpoints the explorer consumes. */

export interface ProfilesPayload {
  schema_version: number;
  profiles: { name: string; tier: string }[];
}

export interface FootprintPayload {
  schema_version: number;
  profile: string;
  tier: string;
  bound: string;
  parameters: {
    operational: OperationalEcho;
    training_amortized_g: number;
  };
  per_block_g: Record<string, number>;
  embodied_g: number;
  operational_g: number;
  training_g: number;
  total_g: number;
}

export interface OperationalEcho {
  power_mw: number;
  duty_factor: number;
  lifetime_years: number;
  grid_intensity_g_per_kwh: number;
  charge_efficiency: number;
}

export interface FleetNetPayload {
  schema_version: number;
  parameters: {
    device_count: number;
    profile: string;
    bound: string;
    per_device_g: number;
    horizon_years: number;
    global_emissions_gt: number;
    reductions: Record<string, number>;
    sector_shares: Record<string, number>;
    operational: OperationalEcho;
  };
  fleet_footprint_mt: number;
  avoided_mt: number;
  offset_fraction: number | null;
  break_even: { fixed_savings_mt: number; other_share: number; rate: number | null };
  net_impact_mt: number;
}

export interface BreakevenPayload {
  schema_version: number;
  parameters: {
    device_count: number;
    profile: string;
    bound: string;
    per_device_g: number;
    horizon_years: number;
    global_emissions_gt: number;
    reductions: Record<string, number>;
  };
  fleet_footprint_mt: number;
  fixed_savings_mt: number;
  other_share: number;
  break_even_rate: number | null;
}

export interface ProjectPayload {
  schema_version: number;
  model: Record<string, number | string>;
  crossings: { threshold_billion: number; year: number | null; never: boolean }[];
}

/** A custom bill-of-materials row entered in the device panel. */
export interface CustomComponent {
  block: string;
  label: string;
  grams: number;
}

export const FUNCTIONAL_BLOCKS = [
  "Processing", "Memory", "Actuators", "Casing", "Connectivity", "PCB",
  "PowerSupply", "Security", "Sensing", "Transport", "UserInterface", "Other",
] as const;

export const BOUNDS = ["low", "typical", "high"] as const;
