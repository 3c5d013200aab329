// Client-side replica mirroring the server's application rules: ordered
// kinds buffer on the per-client sequence, immediate kinds act on receipt,
// snapshots replace the scene wholesale and fast-forward the watermark.
// The replica never invents state; every mutation comes from a frame.

import { POSITION_QUANTUM, sceneDigest } from "./hash.js";
import {
  ClientAction,
  EntityRecord,
  ORDERED_KINDS,
  SceneSnapshot,
  ServerFrame,
} from "./protocol.js";

export interface ResolutionInfo {
  ball: string;
  paddle: string;
  output: string;
  ticket: string;
}

export class Replica {
  entities = new Map<number, EntityRecord>();
  bounds: [number[], number[]] | null = null;
  tick = 0;
  timeScale = 1.0;
  lastSeq = 0;
  lastAnnounce: ResolutionInfo | null = null;
  events: ServerFrame[] = [];

  private buffer = new Map<number, ServerFrame>();
  private seenImmediate = new Set<number>();

  apply(frame: ServerFrame): ClientAction[] {
    const seq = frame.seq;
    if (ORDERED_KINDS.has(frame.kind)) {
      if (seq === null || seq <= this.lastSeq) return [];
      this.buffer.set(seq, frame);
      this.drain();
      return [];
    }
    if (seq !== null) {
      if (this.seenImmediate.has(seq) || seq <= this.lastSeq) return [];
      this.seenImmediate.add(seq);
    }
    const actions = this.handleImmediate(frame);
    this.drain();
    return actions;
  }

  async digest(): Promise<string> {
    return sceneDigest(this.entities);
  }

  private drain(): void {
    for (;;) {
      const next = this.lastSeq + 1;
      const buffered = this.buffer.get(next);
      if (buffered !== undefined) {
        this.buffer.delete(next);
        this.applyOrdered(buffered);
        this.lastSeq = next;
      } else if (this.seenImmediate.has(next)) {
        this.seenImmediate.delete(next);
        this.lastSeq = next;
      } else {
        break;
      }
    }
  }

  private applyOrdered(frame: ServerFrame): void {
    switch (frame.kind) {
      case "spawn_commit": {
        const spec = frame.spec as EntityRecord;
        this.entities.set(spec.id, spec);
        break;
      }
      case "time_scale":
        this.timeScale = frame.factor as number;
        break;
      case "resolution_announce":
        this.lastAnnounce = {
          ball: frame.ball as string,
          paddle: frame.paddle as string,
          output: frame.output as string,
          ticket: frame.ticket as string,
        };
        break;
      case "event":
        this.events.push(frame);
        break;
      default:
        console.warn("ignoring unknown ordered frame kind", frame.kind);
    }
  }

  private handleImmediate(frame: ServerFrame): ClientAction[] {
    switch (frame.kind) {
      case "asset_directive":
        return [{ kind: "asset_ready", asset_id: frame.asset_id as string }];
      case "state_hash":
        // digest is computed by the caller (async); report carries the probe tick
        return [
          { kind: "state_hash_report", tick: frame.tick as number, digest: "" },
        ];
      case "snapshot": {
        this.loadSnapshot(frame.scene as SceneSnapshot);
        if (frame.seq !== null && frame.seq > this.lastSeq) {
          this.lastSeq = frame.seq;
        }
        for (const seq of [...this.buffer.keys()]) {
          if (seq <= this.lastSeq) this.buffer.delete(seq);
        }
        for (const seq of [...this.seenImmediate]) {
          if (seq <= this.lastSeq) this.seenImmediate.delete(seq);
        }
        return [];
      }
      default:
        console.warn("ignoring unknown frame kind", frame.kind);
        return [];
    }
  }

  private loadSnapshot(snapshot: SceneSnapshot): void {
    this.entities.clear();
    for (const record of snapshot.entities) {
      this.entities.set(record.id, {
        ...record,
        position: record.position.map((q) => q * POSITION_QUANTUM),
      });
    }
    this.bounds = snapshot.bounds;
    this.tick = snapshot.tick;
    this.timeScale = snapshot.time_scale;
  }
}
