// Browser entry point: join or create a session, wire the command box, and
// repaint the replica at animation-frame rate.

import { GatewayClient } from "./client.js";
import { buildDrawList } from "./render.js";
import { paint } from "./painter.js";

function elem<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function start(): Promise<void> {
  const canvas = elem<HTMLCanvasElement>("court");
  const ctx = canvas.getContext("2d")!;
  const chips = elem<HTMLDivElement>("chips");
  const codePanel = elem<HTMLPreElement>("code-panel");
  const status = elem<HTMLSpanElement>("status");
  const input = elem<HTMLInputElement>("command");
  const sendButton = elem<HTMLButtonElement>("send");
  const modeSelect = elem<HTMLSelectElement>("mode");
  const joinButton = elem<HTMLButtonElement>("join");

  const base = `${location.protocol}//${location.host}`;
  const client = new GatewayClient(base, (url) => new WebSocket(url) as never);

  joinButton.onclick = async () => {
    const params = new URLSearchParams(location.search);
    let sessionId = params.get("session");
    let token = params.get("token");
    if (!sessionId || !token) {
      const created = await client.createSession(modeSelect.value as "pong" | "holodeck");
      sessionId = created.session_id;
      token = created.join_token;
      history.replaceState(null, "", `?session=${sessionId}&token=${token}`);
    }
    const clientId = params.get("client") ?? `web-${Math.random().toString(36).slice(2, 8)}`;
    await client.join(sessionId, clientId, token);
  };

  const submit = () => {
    if (input.value.trim()) {
      client.submitCommand(input.value.trim());
      input.value = "";
    }
  };
  sendButton.onclick = submit;
  input.onkeydown = (ev) => {
    if (ev.key === "Enter") submit();
  };

  function repaint(): void {
    const view = client.view;
    paint(ctx, buildDrawList(view, { width: canvas.width, height: canvas.height }),
          canvas.width, canvas.height);
    status.textContent = view.connected
      ? view.slowMotion
        ? "connected - slow motion"
        : "connected"
      : "disconnected";
    codePanel.textContent = view.codePanel || "(no generated code yet)";
    chips.innerHTML = "";
    for (const chip of view.tickets.list()) {
      const node = document.createElement("span");
      node.className = `chip chip-${chip.state}`;
      node.textContent = `${chip.text || chip.ticket}: ${chip.state}` +
        (chip.detail ? ` (${chip.detail})` : "");
      chips.appendChild(node);
    }
    requestAnimationFrame(repaint);
  }
  repaint();
}

window.addEventListener("DOMContentLoaded", () => {
  void start();
});
