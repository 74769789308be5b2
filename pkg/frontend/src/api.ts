/** Thin /api/v1 client with latest-wins cancellation per endpoint. */

import {
  BreakevenPayload,
  FleetNetPayload,
  FootprintPayload,
  ProfilesPayload,
  ProjectPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public detail: unknown) {
    super(`service responded ${status}`);
  }
}

const inflight = new Map<string, AbortController>();

async function post<T>(endpoint: string, body: unknown): Promise<T> {
  inflight.get(endpoint)?.abort();
  const controller = new AbortController();
  inflight.set(endpoint, controller);
  const response = await fetch(endpoint, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
    signal: controller.signal,
  });
  if (!response.ok) {
    throw new ApiError(response.status, await response.json().catch(() => null));
  }
  return (await response.json()) as T;
}

export async function getProfiles(): Promise<ProfilesPayload> {
  const response = await fetch("/api/v1/profiles");
  if (!response.ok) throw new ApiError(response.status, null);
  return (await response.json()) as ProfilesPayload;
}

export function postFootprint(body: unknown): Promise<FootprintPayload> {
  return post<FootprintPayload>("/api/v1/footprint", body);
}

export function postFleetNet(body: unknown): Promise<FleetNetPayload> {
  return post<FleetNetPayload>("/api/v1/fleet/net", body);
}

export function postFleetBreakeven(body: unknown): Promise<BreakevenPayload> {
  return post<BreakevenPayload>("/api/v1/fleet/breakeven", body);
}

export function postProject(body: unknown): Promise<ProjectPayload> {
  return post<ProjectPayload>("/api/v1/project", body);
}

/** True for the error a superseded request raises; callers ignore it. */
export function isAbort(error: unknown): boolean {
  return error instanceof DOMException && error.name === "AbortError";
}
