// Pure 2.5-D projection: top-down (x right, z down) with a height cue, so
// the draw list is testable without a canvas. A thin painter applies it.

import { EntityRecord } from "./protocol.js";
import { ClientViewModel } from "./viewmodel.js";

export type DrawOp =
  | {
      type: "box";
      x: number;
      y: number;
      w: number;
      h: number;
      lift: number; // vertical height cue in pixels
      label: string;
      entityKind: string;
    }
  | { type: "outline"; x: number; y: number; w: number; h: number; label: string }
  | { type: "text"; x: number; y: number; text: string; size: number }
  | { type: "tint"; alpha: number };

export interface Viewport {
  width: number;
  height: number;
}

const HEIGHT_CUE = 0.35; // px of lift per px of world height

export function buildDrawList(view: ClientViewModel, viewport: Viewport): DrawOp[] {
  const ops: DrawOp[] = [];
  const bounds = view.replica.bounds;
  if (!bounds) {
    ops.push({ type: "text", x: 12, y: 24, text: "waiting for snapshot...", size: 14 });
    return ops;
  }
  const [min, max] = bounds;
  const worldW = max[0]! - min[0]!;
  const worldD = max[2]! - min[2]!;
  const margin = 30;
  const scale = Math.min(
    (viewport.width - 2 * margin) / worldW,
    (viewport.height - 2 * margin) / worldD,
  );
  const toScreenX = (x: number) => margin + (x - min[0]!) * scale;
  const toScreenY = (z: number) => margin + (z - min[2]!) * scale;

  const entities = [...view.replica.entities.values()].sort((a, b) => a.id - b.id);
  for (const entity of entities) {
    const ex = entity.base_extents.map((c) => c * entity.scale) as number[];
    const w = Math.max(ex[0]! * scale, 3);
    const h = Math.max(ex[2]! * scale, 3);
    const x = toScreenX(entity.position[0]!) - w / 2;
    const y = toScreenY(entity.position[2]!) - h / 2;
    if (entity.kind === "structural") {
      ops.push({ type: "outline", x, y, w, h, label: entity.name });
      continue;
    }
    if (entity.kind === "joint-anchor") {
      continue;
    }
    ops.push({
      type: "box",
      x,
      y,
      w,
      h,
      lift: entity.position[1]! * scale * HEIGHT_CUE,
      label: entity.name,
      entityKind: entity.kind,
    });
  }

  const scores = Object.entries(view.match.scores);
  if (scores.length) {
    const text = scores.map(([player, score]) => `${player}: ${score}`).join("   ");
    ops.push({ type: "text", x: margin, y: 20, text, size: 16 });
  }
  if (view.latencyMs !== null) {
    ops.push({
      type: "text",
      x: viewport.width - 140,
      y: 20,
      text: `rtt ~${Math.round(view.latencyMs)} ms`,
      size: 12,
    });
  }
  if (view.slowMotion) {
    // the muted-colors cue while a transformation is pending
    ops.push({ type: "tint", alpha: 0.45 });
    ops.push({
      type: "text",
      x: viewport.width / 2 - 60,
      y: viewport.height - 16,
      text: "slow motion",
      size: 14,
    });
  }
  return ops;
}

export function labeledBoxes(ops: DrawOp[]): Map<string, DrawOp> {
  const boxes = new Map<string, DrawOp>();
  for (const op of ops) {
    if (op.type === "box") boxes.set(op.label, op);
  }
  return boxes;
}

export function hasTint(ops: DrawOp[]): boolean {
  return ops.some((op) => op.type === "tint");
}

export function entityByName(
  view: ClientViewModel,
  name: string,
): EntityRecord | undefined {
  for (const entity of view.replica.entities.values()) {
    if (entity.name === name) return entity;
  }
  return undefined;
}
