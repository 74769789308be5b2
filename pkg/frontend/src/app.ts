/** Explorer page wiring: controls -> debounced service calls -> chart DOM. */

import { getProfiles, isAbort, postFleetBreakeven, postFleetNet, postFootprint, postProject } from "./api.js";
import {
  formatPercent,
  formatSig3,
  gaugeViewModel,
  growthViewModel,
  netBarViewModel,
  stackViewModel,
} from "./charts.js";
import { DEFAULT_STATE, LIMITS, SessionState, clampState, decodeState, encodeState } from "./state.js";
import { BOUNDS, FUNCTIONAL_BLOCKS } from "./types.js";

const GROWTH_THRESHOLDS = [50, 100, 250, 1000];

let state: SessionState = structuredClone(DEFAULT_STATE);
let sectorNames: string[] = Object.keys(DEFAULT_STATE.reductions);

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function debounce<A extends unknown[]>(fn: (...args: A) => void, ms: number): (...args: A) => void {
  let timer: number | undefined;
  return (...args: A) => {
    window.clearTimeout(timer);
    timer = window.setTimeout(() => fn(...args), ms);
  };
}

function showError(message: string | null): void {
  const banner = $("error-banner");
  if (message === null) {
    banner.hidden = true;
  } else {
    banner.hidden = false;
    banner.textContent = message;
  }
}

function reportFailure(error: unknown): void {
  if (isAbort(error)) return;
  showError(`service call failed: ${error instanceof Error ? error.message : String(error)}; showing last good view`);
}

function footprintBody() {
  const body: Record<string, unknown> = {
    bound: state.bound,
    operational: {
      power_mw: state.powerMw,
      duty_factor: state.dutyFactor,
      lifetime_years: state.lifetimeYears,
      grid_intensity_g_per_kwh: state.gridIntensity,
    },
  };
  if (state.customComponents.length > 0) {
    body.device = {
      name: "custom",
      components: state.customComponents.map((entry) => ({
        block: entry.block,
        label: entry.label,
        low_g: entry.grams,
        typical_g: entry.grams,
        high_g: entry.grams,
      })),
      operational: {
        power_mw: state.powerMw,
        duty_factor: state.dutyFactor,
        lifetime_years: state.lifetimeYears,
        grid_intensity_g_per_kwh: state.gridIntensity,
      },
    };
  } else {
    body.profile = state.profile;
  }
  return body;
}

function fleetBody() {
  return {
    count: Math.round(state.fleetCount),
    profile: state.customComponents.length > 0 ? undefined : state.profile,
    device: state.customComponents.length > 0 ? (footprintBody() as { device: unknown }).device : undefined,
    bound: state.bound,
    horizon_years: state.horizonYears,
    reductions: state.reductions,
    operational: {
      power_mw: state.powerMw,
      duty_factor: state.dutyFactor,
      lifetime_years: state.lifetimeYears,
      grid_intensity_g_per_kwh: state.gridIntensity,
    },
  };
}

async function refreshFootprint(): Promise<void> {
  try {
    const payload = await postFootprint(footprintBody());
    const vm = stackViewModel(payload);
    const stack = $("stack");
    stack.innerHTML = "";
    for (const segment of vm.segments) {
      if (segment.grams <= 0) continue;
      const div = document.createElement("div");
      div.className = "stack-segment";
      div.style.height = `${Math.max(1, segment.fraction * 320)}px`;
      div.style.background = segment.color;
      div.title = `${segment.label}: ${formatSig3(segment.grams)} g`;
      const span = document.createElement("span");
      span.textContent = segment.fraction > 0.04 ? segment.label : "";
      div.appendChild(span);
      stack.appendChild(div);
    }
    $("stack-total").textContent = `total ${vm.totalLabel}`;
    $("stack-largest").textContent = vm.largest ? `largest segment: ${vm.largest}` : "";
    showError(null);
  } catch (error) {
    reportFailure(error);
  }
}

async function refreshFleet(): Promise<void> {
  try {
    const net = await postFleetNet(fleetBody());
    sectorNames = Object.keys(net.parameters.sector_shares).sort();
    renderReductionSliders();
    const residentialShare = net.parameters.sector_shares["residential"] ?? 0;
    const covered = Object.keys(state.reductions);
    const otherRates = sectorNames
      .filter((name) => name !== "residential" && covered.includes(name))
      .map((name) => state.reductions[name] ?? 0);
    const currentOther = otherRates.length
      ? otherRates.reduce((a, b) => a + b, 0) / otherRates.length
      : 0;

    const breakeven = await postFleetBreakeven({
      count: Math.round(state.fleetCount),
      profile: state.customComponents.length > 0 ? undefined : state.profile,
      device: state.customComponents.length > 0 ? (footprintBody() as { device: unknown }).device : undefined,
      bound: state.bound,
      horizon_years: state.horizonYears,
      reductions: { residential: state.reductions["residential"] ?? 0 },
      operational: (fleetBody() as { operational: unknown }).operational,
    });

    const gauge = gaugeViewModel(breakeven, currentOther);
    const marker = $("gauge-marker");
    if (gauge.markerFraction === null) {
      marker.hidden = true;
    } else {
      marker.hidden = false;
      marker.style.left = `${gauge.markerFraction * 100}%`;
    }
    ($("gauge-fill") as HTMLElement).style.width = `${gauge.currentFraction * 100}%`;
    $("gauge-label").textContent =
      `other sectors now ${formatPercent(gauge.currentRate)}; break-even at ${gauge.markerLabel}`;

    const bar = netBarViewModel(net);
    const netFill = $("net-fill");
    netFill.style.width = `${bar.widthFraction * 50}%`;
    netFill.className = `net-fill net-${bar.direction}`;
    netFill.style.transform = bar.direction === "savings" ? "translateX(-100%)" : "";
    $("net-label").textContent =
      `net impact ${bar.label} (${bar.direction === "zero" ? "break even" : `net ${bar.direction}`})`;
    $("fleet-summary").textContent =
      `fleet ${formatSig3(net.fleet_footprint_mt)} Mt vs avoided ${formatSig3(net.avoided_mt)} Mt ` +
      `(offset ${net.offset_fraction === null ? "n/a" : formatSig3(net.offset_fraction)}; ` +
      `residential share ${formatPercent(residentialShare)})`;
    showError(null);
  } catch (error) {
    reportFailure(error);
  }
}

async function refreshGrowth(): Promise<void> {
  try {
    const payload = await postProject({ family: state.growthFamily, thresholds: GROWTH_THRESHOLDS });
    const vm = growthViewModel(payload);
    const tbody = $("growth-rows");
    tbody.innerHTML = "";
    for (const row of vm.rows) {
      const tr = document.createElement("tr");
      tr.innerHTML = `<td>${row.thresholdLabel}</td><td>${row.yearLabel}</td>`;
      tbody.appendChild(tr);
    }
    const svg = $("growth-svg");
    const years = vm.points.map((p) => p.year);
    if (years.length >= 2) {
      const [minYear, maxYear] = [Math.min(...years), Math.max(...years)];
      const maxThreshold = Math.max(...vm.points.map((p) => p.threshold));
      const coords = vm.points.map((p) => {
        const x = 10 + (280 * (p.year - minYear)) / Math.max(1, maxYear - minYear);
        const y = 110 - (100 * p.threshold) / maxThreshold;
        return `${x.toFixed(1)},${y.toFixed(1)}`;
      });
      svg.innerHTML = `<polyline points="${coords.join(" ")}" fill="none" stroke="#4e79a7" stroke-width="2"/>` +
        coords.map((c) => `<circle cx="${c.split(",")[0]}" cy="${c.split(",")[1]}" r="3" fill="#4e79a7"/>`).join("");
    } else {
      svg.innerHTML = "";
    }
    showError(null);
  } catch (error) {
    reportFailure(error);
  }
}

const refreshAll = debounce(() => {
  void refreshFootprint();
  void refreshFleet();
  void refreshGrowth();
}, 250);

function syncFragment(): void {
  const fragment = encodeState(state);
  history.replaceState(null, "", fragment ? `#${fragment}` : location.pathname);
  ($("share-url") as HTMLInputElement).value = location.href;
}

function update(patch: Partial<SessionState>, rerenderControls = true): void {
  state = clampState({ ...state, ...patch });
  syncFragment();
  if (rerenderControls) renderControls();
  refreshAll();
}

function slider(
  id: string, label: string, range: readonly [number, number], step: number,
  patchOf: (v: number) => Partial<SessionState>, readBack: (s: SessionState) => number,
  logScale = false,
): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "control";
  const text = document.createElement("span");
  const value = readBack(state);
  text.textContent = `${label}: ${formatSig3(value)}`;
  const input = document.createElement("input");
  input.type = "range";
  input.id = id;
  // Sliders update in place rather than re-rendering the control panel,
  // otherwise the element under the pointer is destroyed mid-drag.
  const apply = (v: number) => {
    update(patchOf(v), false);
    text.textContent = `${label}: ${formatSig3(readBack(state))}`;
  };
  if (logScale) {
    input.min = String(Math.log10(range[0]));
    input.max = String(Math.log10(range[1]));
    input.step = "0.01";
    input.value = String(Math.log10(value));
    input.addEventListener("input", () => apply(10 ** Number(input.value)));
  } else {
    input.min = String(range[0]);
    input.max = String(range[1]);
    input.step = String(step);
    input.value = String(value);
    input.addEventListener("input", () => apply(Number(input.value)));
  }
  wrap.append(text, input);
  return wrap;
}

function renderReductionSliders(): void {
  const host = $("reductions");
  const existing = new Set(Array.from(host.querySelectorAll("input")).map((i) => i.dataset.sector));
  if (sectorNames.every((name) => existing.has(name)) && existing.size === sectorNames.length) {
    return; // sliders already match the sector list
  }
  host.innerHTML = "";
  for (const name of sectorNames) {
    const wrap = document.createElement("label");
    wrap.className = "control";
    const text = document.createElement("span");
    const current = state.reductions[name] ?? 0;
    text.textContent = `${name}: ${formatPercent(current)}`;
    const input = document.createElement("input");
    input.type = "range";
    input.min = "0";
    input.max = "1";
    input.step = "0.01";
    input.value = String(current);
    input.dataset.sector = name;
    input.addEventListener("input", () => {
      const reductions = { ...state.reductions };
      const rate = Number(input.value);
      if (rate > 0) reductions[name] = rate;
      else delete reductions[name];
      update({ reductions }, false);
      text.textContent = `${name}: ${formatPercent(state.reductions[name] ?? 0)}`;
    });
    wrap.append(text, input);
    host.appendChild(wrap);
  }
}

function renderControls(): void {
  const controls = $("device-controls");
  controls.innerHTML = "";
  controls.append(
    slider("power", "power (mW)", [0, 100], 0.5, (v) => ({ powerMw: v }), (s) => s.powerMw),
    slider("lifetime", "lifetime (years)", LIMITS.lifetimeYears, 0.5,
      (v) => ({ lifetimeYears: v }), (s) => s.lifetimeYears),
    slider("grid", "grid intensity (g/kWh)", LIMITS.gridIntensity, 5,
      (v) => ({ gridIntensity: v }), (s) => s.gridIntensity),
    slider("duty", "duty factor", LIMITS.dutyFactor, 0.01,
      (v) => ({ dutyFactor: v }), (s) => s.dutyFactor),
  );
  const fleetControls = $("fleet-controls");
  fleetControls.innerHTML = "";
  fleetControls.append(
    slider("count", "devices", LIMITS.fleetCount, 1,
      (v) => ({ fleetCount: v }), (s) => s.fleetCount, true),
    slider("horizon", "horizon (years)", LIMITS.horizonYears, 0.5,
      (v) => ({ horizonYears: v }), (s) => s.horizonYears),
  );
  renderReductionSliders();
  ($("bound-select") as HTMLSelectElement).value = state.bound;
  ($("growth-select") as HTMLSelectElement).value = state.growthFamily;
  const profileSelect = $("profile-select") as HTMLSelectElement;
  if (profileSelect.options.length > 0) profileSelect.value = state.profile;
  renderCustomRows();
}

function renderCustomRows(): void {
  const host = $("custom-components");
  host.innerHTML = "";
  state.customComponents.forEach((entry, index) => {
    const row = document.createElement("div");
    row.className = "custom-row";
    row.textContent = `${entry.block} / ${entry.label}: ${formatSig3(entry.grams)} g `;
    const remove = document.createElement("button");
    remove.textContent = "x";
    remove.addEventListener("click", () => {
      const customComponents = state.customComponents.filter((_, i) => i !== index);
      update({ customComponents });
    });
    row.appendChild(remove);
    host.appendChild(row);
  });
}

function bindStaticControls(): void {
  ($("bound-select") as HTMLSelectElement).addEventListener("change", (event) => {
    update({ bound: (event.target as HTMLSelectElement).value as SessionState["bound"] });
  });
  ($("profile-select") as HTMLSelectElement).addEventListener("change", (event) => {
    update({ profile: (event.target as HTMLSelectElement).value, customComponents: [] });
  });
  ($("growth-select") as HTMLSelectElement).addEventListener("change", (event) => {
    update({ growthFamily: (event.target as HTMLSelectElement).value as SessionState["growthFamily"] });
  });
  $("add-component").addEventListener("click", () => {
    const block = ($("block-select") as HTMLSelectElement).value;
    const label = ($("label-input") as HTMLInputElement).value || "part";
    const grams = Number(($("grams-input") as HTMLInputElement).value);
    if (!Number.isFinite(grams) || grams < 0) return;
    update({ customComponents: [...state.customComponents, { block, label, grams }] });
  });
  $("copy-share").addEventListener("click", () => {
    void navigator.clipboard?.writeText(($("share-url") as HTMLInputElement).value);
  });
  for (const preset of document.querySelectorAll<HTMLButtonElement>("[data-preset]")) {
    preset.addEventListener("click", () => {
      const name = preset.dataset.preset!;
      if (name === "fleet-baseline") {
        update({ fleetCount: 250e9, horizonYears: 3, reductions: { residential: 0.2 } });
      } else {
        update({
          profile: name,
          bound: name === "high-cost" ? "high" : "typical",
          customComponents: [],
          powerMw: DEFAULT_STATE.powerMw,
          lifetimeYears: DEFAULT_STATE.lifetimeYears,
          gridIntensity: DEFAULT_STATE.gridIntensity,
          dutyFactor: DEFAULT_STATE.dutyFactor,
        });
      }
    });
  }
}

async function boot(): Promise<void> {
  const decoded = decodeState(location.hash);
  state = decoded.state;
  if (decoded.tampered) {
    showError("the shared link was not valid; showing defaults");
  }
  const blockSelect = $("block-select") as HTMLSelectElement;
  for (const block of FUNCTIONAL_BLOCKS) {
    const option = document.createElement("option");
    option.value = block;
    option.textContent = block;
    blockSelect.appendChild(option);
  }
  const boundSelect = $("bound-select") as HTMLSelectElement;
  for (const bound of BOUNDS) {
    const option = document.createElement("option");
    option.value = bound;
    option.textContent = bound;
    boundSelect.appendChild(option);
  }
  try {
    const profiles = await getProfiles();
    const profileSelect = $("profile-select") as HTMLSelectElement;
    for (const profile of profiles.profiles) {
      const option = document.createElement("option");
      option.value = profile.name;
      option.textContent = `${profile.name} (${profile.tier})`;
      profileSelect.appendChild(option);
    }
  } catch (error) {
    reportFailure(error);
  }
  bindStaticControls();
  renderControls();
  syncFragment();
  refreshAll();
}

if (typeof document !== "undefined") {
  void boot();
}
