// Thin canvas painter for the pure draw list.

import { DrawOp } from "./render.js";

const KIND_FILLS: Record<string, string> = {
  "loaded-asset": "#5b8dd9",
  primitive: "#67b26f",
};

export function paint(ctx: CanvasRenderingContext2D, ops: DrawOp[], width: number, height: number): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#11151c";
  ctx.fillRect(0, 0, width, height);
  for (const op of ops) {
    switch (op.type) {
      case "outline":
        ctx.strokeStyle = "#3c4454";
        ctx.lineWidth = 1.5;
        ctx.strokeRect(op.x, op.y, op.w, op.h);
        break;
      case "box": {
        if (op.lift > 0.5) {
          ctx.fillStyle = "rgba(0,0,0,0.35)"; // ground shadow as the height cue
          ctx.fillRect(op.x, op.y, op.w, op.h);
        }
        ctx.fillStyle = KIND_FILLS[op.entityKind] ?? "#c7a35b";
        ctx.fillRect(op.x, op.y - op.lift, op.w, op.h);
        ctx.fillStyle = "#e8e8e8";
        ctx.font = "11px sans-serif";
        ctx.fillText(op.label, op.x, op.y - op.lift - 3);
        break;
      }
      case "text":
        ctx.fillStyle = "#d6d6d6";
        ctx.font = `${op.size}px sans-serif`;
        ctx.fillText(op.text, op.x, op.y);
        break;
      case "tint":
        ctx.fillStyle = `rgba(110, 110, 140, ${op.alpha})`;
        ctx.fillRect(0, 0, width, height);
        break;
    }
  }
}
