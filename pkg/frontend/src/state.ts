// UI state rules: channel arity per method, spec validity, history and the
// shareable URL-hash encoding of (query, spec).

import type { Method, Scope } from "./api.js";

export interface Spec {
  method: Method;
  channels: string;
  df: number;
  scope: Scope;
  top: number;
}

export const METHODS: Method[] = ["pm1", "pm2", "pm3", "pm4", "pm5"];
export const CHANNELS = ["r", "g", "b"] as const;

export const METHOD_LABELS: Record<Method, string> = {
  pm1: "PM1 · one-channel mean",
  pm2: "PM2 · two-channel mean",
  pm3: "PM3 · three-channel mean",
  pm4: "PM4 · median",
  pm5: "PM5 · standard deviation",
};

// Channel count each method accepts: [min, max].
export const ARITY: Record<Method, [number, number]> = {
  pm1: [1, 1],
  pm2: [2, 2],
  pm3: [3, 3],
  pm4: [3, 3],
  pm5: [1, 3],
};

export const DEFAULT_SPEC: Spec = {
  method: "pm1",
  channels: "r",
  df: 25,
  scope: "group",
  top: 8,
};

export function channelsValid(method: Method, channels: string): boolean {
  const [lo, hi] = ARITY[method];
  return channels.length >= lo && channels.length <= hi;
}

export function specValid(spec: Spec): boolean {
  return (
    METHODS.includes(spec.method) &&
    channelsValid(spec.method, spec.channels) &&
    Number.isFinite(spec.df) &&
    spec.df >= 0 &&
    spec.top >= 1
  );
}

/** Nearest valid channel selection after a method switch: trim extras from
 * the end, then extend in r,g,b order until the minimum is met. */
export function adjustChannels(method: Method, channels: string): string {
  const [lo, hi] = ARITY[method];
  const selected = CHANNELS.filter((c) => channels.includes(c));
  while (selected.length > hi) {
    selected.pop();
  }
  for (const c of CHANNELS) {
    if (selected.length >= lo) break;
    if (!selected.includes(c)) selected.push(c);
  }
  return CHANNELS.filter((c) => selected.includes(c)).join("");
}

export function encodeHash(query: string | null, spec: Spec): string {
  const params = new URLSearchParams();
  if (query) params.set("q", query);
  params.set("m", spec.method);
  params.set("c", spec.channels);
  params.set("df", String(spec.df));
  params.set("s", spec.scope);
  params.set("t", String(spec.top));
  return "#" + params.toString();
}

export function decodeHash(
  hash: string,
): { query: string | null; spec: Spec } | null {
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  if (!raw) return null;
  const params = new URLSearchParams(raw);
  const method = params.get("m") as Method | null;
  if (!method || !METHODS.includes(method)) return null;
  const spec: Spec = {
    method,
    channels: params.get("c") ?? DEFAULT_SPEC.channels,
    df: Number(params.get("df") ?? DEFAULT_SPEC.df),
    scope: params.get("s") === "corpus" ? "corpus" : "group",
    top: Number(params.get("t") ?? DEFAULT_SPEC.top) || DEFAULT_SPEC.top,
  };
  if (!specValid(spec)) return null;
  return { query: params.get("q"), spec };
}

export interface HistoryEntry {
  query: string;
  spec: Spec;
}

/** In-memory back stack for the steer-the-search loop. */
export class HistoryStack {
  private entries: HistoryEntry[] = [];

  get size(): number {
    return this.entries.length;
  }

  push(entry: HistoryEntry): void {
    this.entries.push({ query: entry.query, spec: { ...entry.spec } });
  }

  pop(): HistoryEntry | null {
    return this.entries.pop() ?? null;
  }
}
