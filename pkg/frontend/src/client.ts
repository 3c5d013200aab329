// Gateway client: REST lifecycle + the WebSocket frame pump. The socket
// constructor is injected so the browser passes window.WebSocket and tests
// pass the `ws` package; both speak binary length-prefixed JSON frames.

import { encodeFrame, decodeFrame, ServerFrame } from "./protocol.js";
import { ClientViewModel } from "./viewmodel.js";

export interface SocketLike {
  binaryType: string;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: ArrayBuffer | Uint8Array }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  send(data: Uint8Array): void;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface SessionInfo {
  session_id: string;
  mode: string;
  join_token: string;
}

export class GatewayClient {
  view = new ClientViewModel();
  onFrame: ((frame: ServerFrame) => void) | null = null;

  private socket: SocketLike | null = null;
  private requestCounter = 0;
  private closedByUser = false;
  private reconnectDelayMs = 1000;

  constructor(
    private readonly baseUrl: string,
    private readonly socketFactory: SocketFactory,
    private readonly autoReconnect: boolean = true,
  ) {}

  async createSession(mode: "pong" | "holodeck"): Promise<SessionInfo> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ mode }),
    });
    if (!response.ok) {
      throw new Error(`create session failed: ${response.status} ${await response.text()}`);
    }
    return (await response.json()) as SessionInfo;
  }

  join(sessionId: string, clientId: string, token: string): Promise<void> {
    this.closedByUser = false;
    const wsBase = this.baseUrl.replace(/^http/, "ws");
    const url = `${wsBase}/sessions/${sessionId}/ws?client_id=${encodeURIComponent(
      clientId,
    )}&token=${encodeURIComponent(token)}`;
    return new Promise((resolve, reject) => {
      const socket = this.socketFactory(url);
      socket.binaryType = "arraybuffer";
      this.socket = socket;
      socket.onopen = () => {
        this.view.onConnect();
        resolve();
      };
      socket.onmessage = (ev) => {
        void this.handleFrame(decodeFrame(ev.data));
      };
      socket.onerror = () => reject(new Error("websocket error"));
      socket.onclose = () => {
        this.view.onDisconnect();
        if (!this.closedByUser && this.autoReconnect) {
          setTimeout(() => {
            void this.join(sessionId, clientId, token).catch(() => undefined);
          }, this.reconnectDelayMs);
        }
      };
    });
  }

  private async handleFrame(frame: ServerFrame): Promise<void> {
    const actions = this.view.ingest(frame);
    this.onFrame?.(frame);
    for (const action of actions) {
      if (action.kind === "asset_ready") {
        this.send({ kind: "asset_ready", asset_id: action.asset_id });
      } else if (action.kind === "state_hash_report") {
        const digest = await this.view.replica.digest();
        this.send({ kind: "state_hash_report", tick: action.tick, digest });
      }
    }
  }

  submitCommand(text: string): string {
    const requestId = `r${++this.requestCounter}`;
    this.view.noteSubmit(requestId, text);
    this.send({ kind: "submit_command", text, request_id: requestId });
    return requestId;
  }

  private send(payload: unknown): void {
    if (!this.socket) throw new Error("not connected");
    this.socket.send(encodeFrame(payload));
  }

  close(): void {
    this.closedByUser = true;
    this.socket?.close();
    this.socket = null;
  }
}
