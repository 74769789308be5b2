/** Pure view-model builders for the three charts.
 *
 * Everything here is geometry and labeling over service responses; no
 * footprint math happens client-side, so every displayed number is a
 * service value after display rounding.
 */

import {
  BreakevenPayload,
  FleetNetPayload,
  FootprintPayload,
  ProjectPayload,
} from "./types.js";

const SEGMENT_COLORS: Record<string, string> = {
  Processing: "#4e79a7", Memory: "#a0cbe8", Actuators: "#f28e2b", Casing: "#ffbe7d",
  Connectivity: "#59a14f", PCB: "#8cd17d", PowerSupply: "#b6992d", Security: "#f1ce63",
  Sensing: "#499894", Transport: "#86bcb6", UserInterface: "#e15759", Other: "#ff9d9a",
  ProductUse: "#79706e", Training: "#bab0ac",
};

/** Stack order: functional blocks as the service lists them, then use/training. */
export interface StackSegment {
  label: string;
  grams: number;
  fraction: number;
  color: string;
}

export interface StackViewModel {
  segments: StackSegment[];
  totalGrams: number;
  totalLabel: string;
  largest: string | null;
}

export function stackViewModel(payload: FootprintPayload): StackViewModel {
  const entries: [string, number][] = [
    ...Object.entries(payload.per_block_g),
    ["ProductUse", payload.operational_g],
    ["Training", payload.training_g],
  ];
  const total = payload.total_g;
  const segments = entries.map(([label, grams]) => ({
    label,
    grams,
    fraction: total > 0 ? grams / total : 0,
    color: SEGMENT_COLORS[label] ?? "#cccccc",
  }));
  let largest: string | null = null;
  let best = -Infinity;
  for (const segment of segments) {
    if (segment.grams > best) {
      best = segment.grams;
      largest = segment.label;
    }
  }
  return {
    segments,
    totalGrams: total,
    totalLabel: `${formatSig3(total)} gCO2e`,
    largest: total > 0 ? largest : null,
  };
}

export interface GaugeViewModel {
  markerRate: number | null;
  markerLabel: string;
  currentRate: number;
  scaleMax: number;
  markerFraction: number | null;
  currentFraction: number;
}

/** Break-even gauge: where the other-sector dial sits vs the required rate. */
export function gaugeViewModel(
  breakeven: BreakevenPayload,
  currentOtherRate: number,
): GaugeViewModel {
  const marker = breakeven.break_even_rate;
  const scaleMax = Math.max(0.05, marker ?? 0, currentOtherRate) * 1.25;
  return {
    markerRate: marker,
    markerLabel: marker === null ? "unreachable" : formatPercent(marker),
    currentRate: currentOtherRate,
    scaleMax,
    markerFraction: marker === null ? null : marker / scaleMax,
    currentFraction: currentOtherRate / scaleMax,
  };
}

export interface NetBarViewModel {
  valueMt: number;
  label: string;
  direction: "emissions" | "savings" | "zero";
  widthFraction: number;
}

export function netBarViewModel(net: FleetNetPayload): NetBarViewModel {
  const value = net.net_impact_mt;
  const scale = Math.max(Math.abs(value), net.fleet_footprint_mt, 1);
  return {
    valueMt: value,
    label: `${formatSig3(value)} MtCO2e`,
    direction: value > 0 ? "emissions" : value < 0 ? "savings" : "zero",
    widthFraction: Math.min(1, Math.abs(value) / scale),
  };
}

export interface GrowthViewModel {
  rows: { thresholdLabel: string; yearLabel: string }[];
  points: { threshold: number; year: number }[];
}

export function growthViewModel(payload: ProjectPayload): GrowthViewModel {
  const rows = payload.crossings.map((crossing) => ({
    thresholdLabel: `${formatSig3(crossing.threshold_billion)} B`,
    yearLabel: crossing.never || crossing.year === null ? "never" : String(crossing.year),
  }));
  const points = payload.crossings
    .filter((crossing) => !crossing.never && crossing.year !== null)
    .map((crossing) => ({ threshold: crossing.threshold_billion, year: crossing.year as number }));
  return { rows, points };
}

/** Display rounding used across the UI: three significant figures. */
export function formatSig3(value: number): string {
  if (value === 0) return "0";
  const rounded = Number(value.toPrecision(3));
  if (Math.abs(rounded) >= 1e7 || Math.abs(rounded) < 1e-4) {
    return rounded.toExponential(2);
  }
  return rounded.toLocaleString("en-US", { maximumFractionDigits: 10 });
}

export function formatPercent(rate: number): string {
  return `${(rate * 100).toFixed(2)}%`;
}
