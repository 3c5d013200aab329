import { describe, expect, it } from "vitest";

import { buildDrawList, hasTint, labeledBoxes } from "../src/render.js";
import { ClientViewModel } from "../src/viewmodel.js";
import type { EntityRecord, ServerFrame } from "../src/protocol.js";

const VIEWPORT = { width: 640, height: 640 };

function frame(seq: number, kind: string, rest: Record<string, unknown> = {}): ServerFrame {
  return { v: 1, session: "s", seq, kind, ...rest };
}

function entity(id: number, name: string, kind = "primitive", q = 1e-4): Partial<EntityRecord> {
  return {
    id,
    name,
    kind,
    position: [0 / q, 1 / q, 0 / q],
    rotation: [1, 0, 0, 0],
    scale: 0.2,
    base_extents: [1, 1, 1],
    velocity: [0, 0, 0],
    mass: null,
    parent: null,
    shape: null,
    asset: null,
    vertex_count: 0,
  };
}

function snapshotFrame(seq: number, entities: Partial<EntityRecord>[]): ServerFrame {
  return frame(seq, "snapshot", {
    tick: 1,
    scene: {
      version: 1,
      bounds: [[-1, 0, -2.5], [1, 2, 2.5]],
      tick: 1,
      time_scale: 1,
      rng_seed: 0,
      next_id: 100,
      entities,
    },
  });
}

describe("view model", () => {
  it("renders waiting text before any snapshot", () => {
    const view = new ClientViewModel();
    const ops = buildDrawList(view, VIEWPORT);
    expect(ops[0]).toMatchObject({ type: "text" });
  });

  it("draws labeled boxes for committed entities only", () => {
    const view = new ClientViewModel();
    view.ingest(snapshotFrame(1, [entity(10, "ball")]));
    view.ingest(frame(2, "spawn_commit", { spec: { ...entity(11, "sushi"), position: [0, 1, 0.5] } }));
    const boxes = labeledBoxes(buildDrawList(view, VIEWPORT));
    expect(boxes.has("ball")).toBe(true);
    expect(boxes.has("sushi")).toBe(true);
  });

  it("shows six structural outlines for the empty room", () => {
    const view = new ClientViewModel();
    const structurals = [
      "Floor", "Ceiling", "North Wall", "East Wall", "South Wall", "West Wall",
    ].map((name, i) => ({ ...entity(i + 1, name, "structural"), base_extents: [10, 0, 10] }));
    view.ingest(snapshotFrame(1, structurals));
    const ops = buildDrawList(view, VIEWPORT);
    expect(ops.filter((op) => op.type === "outline")).toHaveLength(6);
  });

  it("tints the frame during time dilation and clears after", () => {
    const view = new ClientViewModel();
    view.ingest(snapshotFrame(1, [entity(10, "ball")]));
    view.ingest(frame(2, "time_scale", { factor: 0.01 }));
    expect(view.slowMotion).toBe(true);
    expect(hasTint(buildDrawList(view, VIEWPORT))).toBe(true);
    view.ingest(frame(3, "time_scale", { factor: 1.0 }));
    expect(hasTint(buildDrawList(view, VIEWPORT))).toBe(false);
  });

  it("tracks ticket chips through the lifecycle", () => {
    const view = new ClientViewModel();
    view.noteSubmit("r1", "change ball to salmon", 1000);
    view.ingest(
      frame(1, "event", { event: "submit_result", data: { request_id: "r1", ticket: "t1" } }),
      1234,
    );
    expect(view.latencyMs).toBe(234);
    let seq = 2;
    for (const state of ["queued", "resolving", "downloading", "committed"]) {
      view.ingest(frame(seq++, "event", { event: "ticket_status", data: { ticket: "t1", state } }));
    }
    expect(view.tickets.chip("t1")?.state).toBe("committed");
    expect(view.tickets.chip("t1")?.text).toBe("change ball to salmon");
  });

  it("marks unresolved chips unknown on disconnect", () => {
    const view = new ClientViewModel();
    view.noteSubmit("r1", "change ball to egg");
    view.ingest(frame(1, "event", { event: "submit_result", data: { request_id: "r1", ticket: "t1" } }));
    view.ingest(frame(2, "event", { event: "ticket_status", data: { ticket: "t1", state: "downloading" } }));
    view.onDisconnect();
    expect(view.tickets.chip("t1")?.state).toBe("unknown");
  });

  it("failed submits surface the server diagnostic", () => {
    const view = new ClientViewModel();
    view.noteSubmit("r2", "hello world");
    view.ingest(
      frame(1, "event", {
        event: "submit_result",
        data: { request_id: "r2", error: "VALIDATION_FAILED", detail: "not a recognized player command" },
      }),
    );
    const chips = view.tickets.list();
    expect(chips).toHaveLength(1);
    expect(chips[0]).toMatchObject({ state: "failed" });
    expect(chips[0]!.detail).toContain("not a recognized");
  });

  it("updates the code panel and scores from events", () => {
    const view = new ClientViewModel();
    view.ingest(frame(1, "event", { event: "code_panel", data: { ticket: "t1", text: 'load "bed" as bed\n' } }));
    view.ingest(frame(2, "event", { event: "match", data: { type: "score", scorer: "p1", scores: { p1: 1, p2: 0 } } }));
    expect(view.codePanel).toBe('load "bed" as bed\n');
    expect(view.match.scores).toEqual({ p1: 1, p2: 0 });
  });

  it("ordered events behind a gap do not mutate the view early", () => {
    const view = new ClientViewModel();
    view.ingest(snapshotFrame(1, [entity(10, "ball")]));
    view.ingest(frame(3, "time_scale", { factor: 0.01 })); // gap at 2
    expect(view.slowMotion).toBe(false);
    view.ingest(frame(2, "spawn_commit", { spec: { ...entity(11, "salmon"), position: [0, 1, 0] } }));
    expect(view.slowMotion).toBe(true); // drained in order
  });
});
