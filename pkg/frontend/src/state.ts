/** Session state: every control on the page, serializable to a URL fragment.
 *
 * The engine never runs in the browser; this module only clamps control
 * values into the ranges the service accepts and round-trips them through
 * the shareable fragment exactly.
 */

import { BOUNDS, CustomComponent, FUNCTIONAL_BLOCKS } from "./types.js";

export interface SessionState {
  profile: string;
  bound: (typeof BOUNDS)[number];
  customComponents: CustomComponent[];
  powerMw: number;
  lifetimeYears: number;
  gridIntensity: number;
  dutyFactor: number;
  fleetCount: number;
  horizonYears: number;
  reductions: Record<string, number>;
  growthFamily: "linear" | "exponential";
}

export const DEFAULT_STATE: SessionState = {
  profile: "high-cost",
  bound: "high",
  customComponents: [],
  powerMw: 1.0,
  lifetimeYears: 3.0,
  gridIntensity: 475.0,
  dutyFactor: 1.0,
  fleetCount: 250e9,
  horizonYears: 3.0,
  reductions: { residential: 0.2 },
  growthFamily: "linear",
};

export const LIMITS = {
  powerMw: [0, 1000],
  lifetimeYears: [0.5, 20],
  gridIntensity: [0, 2000],
  dutyFactor: [0, 1],
  fleetCount: [1e6, 1e13],
  horizonYears: [0.5, 20],
  reduction: [0, 1],
} as const;

function clampNumber(value: number, range: readonly [number, number], fallback: number): number {
  if (!Number.isFinite(value)) return fallback;
  return Math.min(range[1], Math.max(range[0], value));
}

/** Force every field into a valid range; unknown enums fall back to defaults. */
export function clampState(raw: Partial<SessionState>): SessionState {
  const base = DEFAULT_STATE;
  const reductions: Record<string, number> = {};
  for (const [sector, rate] of Object.entries(raw.reductions ?? base.reductions)) {
    reductions[sector] = clampNumber(Number(rate), LIMITS.reduction, 0);
  }
  const customComponents: CustomComponent[] = [];
  for (const entry of raw.customComponents ?? []) {
    if (!entry || typeof entry.label !== "string") continue;
    if (!(FUNCTIONAL_BLOCKS as readonly string[]).includes(entry.block)) continue;
    const grams = Number(entry.grams);
    if (!Number.isFinite(grams) || grams < 0) continue;
    customComponents.push({ block: entry.block, label: entry.label, grams });
  }
  return {
    profile: typeof raw.profile === "string" && raw.profile ? raw.profile : base.profile,
    bound: (BOUNDS as readonly string[]).includes(raw.bound as string)
      ? (raw.bound as SessionState["bound"])
      : base.bound,
    customComponents,
    powerMw: clampNumber(Number(raw.powerMw ?? base.powerMw), LIMITS.powerMw, base.powerMw),
    lifetimeYears: clampNumber(
      Number(raw.lifetimeYears ?? base.lifetimeYears), LIMITS.lifetimeYears, base.lifetimeYears),
    gridIntensity: clampNumber(
      Number(raw.gridIntensity ?? base.gridIntensity), LIMITS.gridIntensity, base.gridIntensity),
    dutyFactor: clampNumber(Number(raw.dutyFactor ?? base.dutyFactor), LIMITS.dutyFactor, base.dutyFactor),
    fleetCount: clampNumber(Number(raw.fleetCount ?? base.fleetCount), LIMITS.fleetCount, base.fleetCount),
    horizonYears: clampNumber(
      Number(raw.horizonYears ?? base.horizonYears), LIMITS.horizonYears, base.horizonYears),
    reductions,
    growthFamily: raw.growthFamily === "exponential" ? "exponential" : "linear",
  };
}

function base64UrlEncode(text: string): string {
  const bytes = new TextEncoder().encode(text);
  let binary = "";
  for (const b of bytes) binary += String.fromCharCode(b);
  return btoa(binary).replace(/\+/g, "-").replace(/\//g, "_").replace(/=+$/, "");
}

function base64UrlDecode(encoded: string): string {
  const padded = encoded.replace(/-/g, "+").replace(/_/g, "/");
  const binary = atob(padded + "=".repeat((4 - (padded.length % 4)) % 4));
  const bytes = Uint8Array.from(binary, (c) => c.charCodeAt(0));
  return new TextDecoder().decode(bytes);
}

/** Canonical fragment: empty for the default state, else packed JSON. */
export function encodeState(state: SessionState): string {
  if (JSON.stringify(state) === JSON.stringify(DEFAULT_STATE)) return "";
  return base64UrlEncode(JSON.stringify(state));
}

export interface DecodeResult {
  state: SessionState;
  tampered: boolean;
}

/** Decode a fragment. A fragment is honest only if it is exactly the encoding
 * of a valid state; anything else resets to defaults with a tamper notice. */
export function decodeState(fragment: string): DecodeResult {
  const trimmed = fragment.replace(/^#/, "");
  if (!trimmed) return { state: structuredClone(DEFAULT_STATE), tampered: false };
  try {
    const parsed = JSON.parse(base64UrlDecode(trimmed));
    if (typeof parsed !== "object" || parsed === null) throw new Error("not an object");
    const state = clampState(parsed as Partial<SessionState>);
    if (JSON.stringify(state) !== JSON.stringify(parsed)) {
      return { state: structuredClone(DEFAULT_STATE), tampered: true };
    }
    return { state, tampered: false };
  } catch {
    return { state: structuredClone(DEFAULT_STATE), tampered: true };
  }
}
