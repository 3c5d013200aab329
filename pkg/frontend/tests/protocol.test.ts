import { describe, expect, it } from "vitest";

import { decodeFrame, encodeFrame } from "../src/protocol.js";

describe("frame codec", () => {
  it("round-trips payloads through the length prefix", () => {
    const payload = { kind: "submit_command", text: "change ball to salmon", request_id: "r1" };
    const frame = encodeFrame(payload);
    expect(decodeFrame(frame)).toEqual(payload);
  });

  it("length prefix counts bytes, not characters", () => {
    const payload = { kind: "event", text: "café ✓" };
    const frame = encodeFrame(payload);
    const text = new TextDecoder().decode(frame);
    const declared = Number(text.slice(0, text.indexOf(":")));
    expect(declared).toBeGreaterThan((payload.text?.length ?? 0) + 16);
    expect(decodeFrame(frame)).toEqual(payload);
  });

  it("rejects truncated frames", () => {
    const frame = encodeFrame({ kind: "time_scale", factor: 0.01 });
    expect(() => decodeFrame(frame.slice(0, frame.length - 2))).toThrow();
  });
});
