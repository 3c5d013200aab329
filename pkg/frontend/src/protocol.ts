// Wire protocol: length-prefixed JSON frames (`<decimal byte length>:<json>`)
// carried as binary WebSocket messages, matching the gateway's framing.

export const WIRE_VERSION = 1;

export interface ServerFrame {
  v: number;
  session: string;
  seq: number | null;
  kind: string;
  [field: string]: unknown;
}

export interface EntityRecord {
  id: number;
  name: string;
  kind: string;
  position: number[];
  rotation: number[];
  scale: number;
  base_extents: number[];
  velocity: number[];
  mass: number | null;
  parent: string | null;
  shape: string | null;
  asset: { id: string; url: string } | null;
  vertex_count: number;
}

export interface SceneSnapshot {
  version: number;
  bounds: [number[], number[]];
  tick: number;
  time_scale: number;
  rng_seed: number;
  next_id: number;
  entities: EntityRecord[];
}

const encoder = new TextEncoder();
const decoder = new TextDecoder();

export function encodeFrame(payload: unknown): Uint8Array {
  const body = encoder.encode(JSON.stringify(payload));
  const prefix = encoder.encode(`${body.length}:`);
  const frame = new Uint8Array(prefix.length + body.length);
  frame.set(prefix, 0);
  frame.set(body, prefix.length);
  return frame;
}

export function decodeFrame(raw: ArrayBuffer | Uint8Array): ServerFrame {
  const bytes = raw instanceof Uint8Array ? raw : new Uint8Array(raw);
  const text = decoder.decode(bytes);
  const sep = text.indexOf(":");
  if (sep < 0) {
    throw new Error("missing frame length prefix");
  }
  const declared = Number(text.slice(0, sep));
  const body = text.slice(sep + 1);
  if (encoder.encode(body).length !== declared) {
    throw new Error(`frame length mismatch: declared ${declared}`);
  }
  return JSON.parse(body) as ServerFrame;
}

// Frames a replica applies strictly in sequence order; the rest act on receipt.
export const ORDERED_KINDS = new Set([
  "spawn_commit",
  "time_scale",
  "resolution_announce",
  "event",
]);

export type ClientAction =
  | { kind: "asset_ready"; asset_id: string }
  | { kind: "state_hash_report"; tick: number; digest: string };
