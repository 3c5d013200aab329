// The client view model: replica scene plus UI state, fed exclusively by
// server frames. Rendering reads committed replica state only; pending
// transformations surface as chips and the slow-motion indicator.

import { Replica } from "./replica.js";
import { ServerFrame } from "./protocol.js";
import { TicketBoard } from "./tickets.js";

export interface MatchInfo {
  scores: Record<string, number>;
  lastEvent: string;
}

export class ClientViewModel {
  replica = new Replica();
  tickets = new TicketBoard();
  codePanel = "";
  match: MatchInfo = { scores: {}, lastEvent: "" };
  latencyMs: number | null = null;
  connected = false;
  lastStateHash: { tick: number; digest: string } | null = null;

  private sentAt = new Map<string, number>(); // request_id -> epoch ms

  get timeScale(): number {
    return this.replica.timeScale;
  }

  get slowMotion(): boolean {
    return this.replica.timeScale <= 0.011;
  }

  noteSubmit(requestId: string, text: string, now: number = Date.now()): void {
    this.tickets.submit(requestId, text);
    this.sentAt.set(requestId, now);
  }

  // Applies one server frame; returns replica actions the transport must send.
  // UI events are consumed from the replica's ordered drain, never early.
  ingest(frame: ServerFrame, now: number = Date.now()) {
    const actions = this.replica.apply(frame);
    if (frame.kind === "state_hash") {
      this.lastStateHash = { tick: frame.tick as number, digest: frame.digest as string };
    }
    for (const drained of this.replica.events.splice(0)) {
      this.handleEvent(drained, now);
    }
    return actions;
  }

  private handleEvent(frame: ServerFrame, now: number): void {
    const name = frame.event as string;
    const data = (frame.data ?? {}) as Record<string, unknown>;
    switch (name) {
      case "submit_result": {
        const requestId = data.request_id as string;
        const sent = this.sentAt.get(requestId);
        if (sent !== undefined) {
          this.latencyMs = now - sent;
          this.sentAt.delete(requestId);
        }
        this.tickets.handleSubmitResult(data as never);
        break;
      }
      case "ticket_status":
        this.tickets.handleTicketStatus(data as never);
        break;
      case "code_panel":
        this.codePanel = (data.text as string) ?? "";
        break;
      case "match": {
        const type = data.type as string;
        if (type === "score") {
          this.match.scores = data.scores as Record<string, number>;
        }
        this.match.lastEvent = type;
        break;
      }
      case "barrier":
        this.match.lastEvent = `barrier ${data.acked}/${data.total}`;
        break;
      default:
        break; // unknown events are inert
    }
  }

  onDisconnect(): void {
    this.connected = false;
    this.tickets.markAllUnknown();
  }

  onConnect(): void {
    this.connected = true;
  }
}
