/** End-to-end golden flow over recorded service responses: the high-cost
 * preset's stacked bar, the break-even gauge, and the shareable URL. */

import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { test } from "node:test";

import { gaugeViewModel, stackViewModel, formatSig3 } from "../src/charts.js";
import { clampState, decodeState, encodeState } from "../src/state.js";
import type { BreakevenPayload, FootprintPayload } from "../src/types.js";

function fixture<T>(name: string): T {
  const url = new URL(`../../tests/fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

test("A12 golden flow: high-cost preset, gauge marker, URL round trip", () => {
  const footprint = fixture<FootprintPayload>("footprint-high-cost.json");
  const breakeven = fixture<BreakevenPayload>("fleet-breakeven-baseline.json");

  // High-cost preset: PowerSupply dominates the stack.
  const stack = stackViewModel(footprint);
  assert.equal(stack.largest, "PowerSupply");

  // Every rendered segment is the recorded response value.
  for (const segment of stack.segments) {
    const recorded = segment.label === "ProductUse"
      ? footprint.operational_g
      : segment.label === "Training"
        ? footprint.training_g
        : footprint.per_block_g[segment.label];
    assert.equal(segment.grams, recorded);
  }
  assert.equal(stack.totalLabel, `${formatSig3(footprint.total_g)} gCO2e`);

  // Break-even gauge marker at 0.6% within 0.1 percentage points.
  const gauge = gaugeViewModel(breakeven, 0.0);
  assert.ok(gauge.markerRate !== null);
  assert.ok(Math.abs(gauge.markerRate - 0.006) <= 0.001);
  assert.equal(gauge.markerRate, breakeven.break_even_rate);

  // The high-cost preset's session state round-trips through the URL exactly.
  const preset = clampState({
    profile: "high-cost",
    bound: "high",
    fleetCount: 250e9,
    horizonYears: 3,
    reductions: { residential: 0.2 },
  });
  const decoded = decodeState(`#${encodeState(preset)}`);
  assert.equal(decoded.tampered, false);
  assert.deepEqual(decoded.state, preset);

  console.log("A12 PASS - high-cost preset stack, 0.6% gauge marker, exact URL round trip");
});
