import { describe, expect, it } from "vitest";

import { Replica } from "../src/replica.js";
import type { EntityRecord, ServerFrame } from "../src/protocol.js";

function spec(id: number, name: string): EntityRecord {
  return {
    id,
    name,
    kind: "primitive",
    position: [0, 1, 0],
    rotation: [1, 0, 0, 0],
    scale: 0.2,
    base_extents: [1, 1, 1],
    velocity: [0, 0, 0],
    mass: null,
    parent: null,
    shape: "sphere",
    asset: null,
    vertex_count: 0,
  };
}

function frame(seq: number, kind: string, rest: Record<string, unknown> = {}): ServerFrame {
  return { v: 1, session: "s", seq, kind, ...rest };
}

describe("replica ordering", () => {
  it("applies ordered frames in sequence despite arrival order", () => {
    const replica = new Replica();
    replica.apply(frame(3, "spawn_commit", { spec: spec(12, "third") }));
    replica.apply(frame(1, "spawn_commit", { spec: spec(10, "first") }));
    expect(replica.entities.size).toBe(1); // 2 still missing
    replica.apply(frame(2, "spawn_commit", { spec: spec(11, "second") }));
    expect([...replica.entities.keys()]).toEqual([10, 11, 12]);
    expect(replica.lastSeq).toBe(3);
  });

  it("ignores duplicate commits", () => {
    const replica = new Replica();
    const commit = frame(1, "spawn_commit", { spec: spec(10, "thing") });
    replica.apply(commit);
    replica.apply(commit);
    expect(replica.entities.size).toBe(1);
    expect(replica.lastSeq).toBe(1);
  });

  it("acks asset directives immediately even behind a gap", () => {
    const replica = new Replica();
    replica.apply(frame(5, "spawn_commit", { spec: spec(10, "stalled") }));
    const actions = replica.apply(frame(6, "asset_directive", { asset_id: "sushi-001" }));
    expect(actions).toEqual([{ kind: "asset_ready", asset_id: "sushi-001" }]);
  });

  it("immediate frames fill ordered-watermark holes", () => {
    const replica = new Replica();
    replica.apply(frame(1, "asset_directive", { asset_id: "a" }));
    replica.apply(frame(2, "spawn_commit", { spec: spec(10, "after-directive") }));
    expect(replica.entities.size).toBe(1);
    expect(replica.lastSeq).toBe(2);
  });

  it("snapshot replaces the scene wholesale and fast-forwards", () => {
    const replica = new Replica();
    replica.apply(frame(9, "time_scale", { factor: 0.01 })); // buffered behind gap
    expect(replica.timeScale).toBe(1);
    replica.apply(
      frame(8, "snapshot", {
        tick: 40,
        scene: {
          version: 1,
          bounds: [[-5, 0, -5], [5, 10, 5]],
          tick: 40,
          time_scale: 1,
          rng_seed: 0,
          next_id: 11,
          entities: [{ ...spec(10, "snap"), position: [0, 10000, 0] }],
        },
      }),
    );
    expect(replica.entities.get(10)?.position[1]).toBeCloseTo(1.0, 9);
    expect(replica.lastSeq).toBe(9); // 8 via snapshot, 9 drained after
    expect(replica.timeScale).toBe(0.01);
  });

  it("unknown kinds are inert", () => {
    const replica = new Replica();
    expect(replica.apply(frame(1, "mystery", {}))).toEqual([]);
  });
});
