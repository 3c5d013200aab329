// Scene digest computation, byte-compatible with the server's canonical
// serialization (sorted keys, compact separators, ASCII-escaped strings,
// Python float repr, positions quantized to 1e-4 with ties-to-even).

import type { EntityRecord } from "./protocol.js";

export const POSITION_QUANTUM = 1e-4;

export function pythonRound(x: number): number {
  const floor = Math.floor(x);
  const diff = x - floor;
  if (diff > 0.5) return floor + 1;
  if (diff < 0.5) return floor;
  return floor % 2 === 0 ? floor : floor + 1;
}

export function quantize(value: number): number {
  return pythonRound(value / POSITION_QUANTUM);
}

export function pyFloatRepr(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite float ${x}`);
  if (Number.isInteger(x) && Math.abs(x) < 1e16) {
    return (Object.is(x, -0) ? "-0" : String(x)) + ".0";
  }
  const abs = Math.abs(x);
  if (abs >= 1e16 || (abs > 0 && abs < 1e-4)) {
    const match = x.toExponential().match(/^(-?\d(?:\.\d+)?)e([+-])(\d+)$/);
    if (!match) throw new Error(`unexpected exponential form for ${x}`);
    return `${match[1]}e${match[2]}${match[3]!.padStart(2, "0")}`;
  }
  return String(x);
}

function pyString(value: string): string {
  // JSON string with non-ASCII escaped, like json.dumps(ensure_ascii=True).
  let out = '"';
  for (const ch of value) {
    const code = ch.codePointAt(0)!;
    if (ch === '"') out += '\\"';
    else if (ch === "\\") out += "\\\\";
    else if (code === 0x08) out += "\\b";
    else if (code === 0x09) out += "\\t";
    else if (code === 0x0a) out += "\\n";
    else if (code === 0x0c) out += "\\f";
    else if (code === 0x0d) out += "\\r";
    else if (code < 0x20 || code > 0x7e) {
      if (code > 0xffff) {
        const high = 0xd800 + ((code - 0x10000) >> 10);
        const low = 0xdc00 + ((code - 0x10000) & 0x3ff);
        out += `\\u${high.toString(16).padStart(4, "0")}\\u${low.toString(16).padStart(4, "0")}`;
      } else {
        out += `\\u${code.toString(16).padStart(4, "0")}`;
      }
    } else out += ch;
  }
  return out + '"';
}

function floatArray(values: number[]): string {
  return "[" + values.map(pyFloatRepr).join(",") + "]";
}

function intArray(values: number[]): string {
  return "[" + values.map((v) => String(v)).join(",") + "]";
}

// Keys in sorted order, matching the server's sort_keys serialization.
function canonicalEntity(record: EntityRecord, quantizedPosition: number[]): string {
  const asset =
    record.asset === null
      ? "null"
      : `{"id":${pyString(record.asset.id)},"url":${pyString(record.asset.url)}}`;
  return (
    "{" +
    `"asset":${asset},` +
    `"base_extents":${floatArray(record.base_extents)},` +
    `"id":${String(record.id)},` +
    `"kind":${pyString(record.kind)},` +
    `"mass":${record.mass === null ? "null" : pyFloatRepr(record.mass)},` +
    `"name":${pyString(record.name)},` +
    `"parent":${record.parent === null ? "null" : pyString(record.parent)},` +
    `"position":${intArray(quantizedPosition)},` +
    `"rotation":${floatArray(record.rotation)},` +
    `"scale":${pyFloatRepr(record.scale)},` +
    `"shape":${record.shape === null ? "null" : pyString(record.shape)},` +
    `"velocity":${floatArray(record.velocity)},` +
    `"vertex_count":${String(record.vertex_count)}` +
    "}"
  );
}

export function canonicalBytes(entities: Map<number, EntityRecord>): Uint8Array {
  const ids = [...entities.keys()].sort((a, b) => a - b);
  const parts = ids.map((id) => {
    const record = entities.get(id)!;
    return canonicalEntity(record, record.position.map(quantize));
  });
  return new TextEncoder().encode("[" + parts.join(",") + "]");
}

export async function sha256Hex(bytes: Uint8Array): Promise<string> {
  const digest = await crypto.subtle.digest(
    "SHA-256",
    bytes.buffer.slice(bytes.byteOffset, bytes.byteOffset + bytes.byteLength) as ArrayBuffer,
  );
  return [...new Uint8Array(digest)].map((b) => b.toString(16).padStart(2, "0")).join("");
}

export async function sceneDigest(entities: Map<number, EntityRecord>): Promise<string> {
  return sha256Hex(canonicalBytes(entities));
}
