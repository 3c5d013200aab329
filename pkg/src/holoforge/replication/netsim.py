"""Deterministic discrete-event network simulation harness.

Runs one authoritative session and N client replicas on a virtual clock with
configurable per-link latency, jitter, reordering, and drops. Bitwise
repeatable for a fixed seed: one RNG stream drives every random draw and the
event heap breaks ties with a monotone counter.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from itertools import count
from typing import Optional

from ..errors import ValidationFailedError
from .messages import AssetReady, CommandRequest, Envelope, StateHashReport
from .replica import Replica
from .session import Session

TICK_DT = 1.0 / 60.0


@dataclass(frozen=True)
class NetworkConfig:
    latency_ms: float = 0.0
    jitter_ms: float = 0.0
    reorder_probability: float = 0.0
    drop_probability: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("reorder_probability", "drop_probability"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")


@dataclass
class SimulationResult:
    trace: list[dict]
    authoritative_digest: str
    client_digests: dict[str, str]
    tickets: dict[str, tuple[str, str]]
    audit_cycles: int = 0
    rejected_commands: int = 0
    virtual_time: float = 0.0

    @property
    def converged(self) -> bool:
        return all(d == self.authoritative_digest for d in self.client_digests.values())


@dataclass
class ScriptCommand:
    at: float
    client: str
    text: str


class Simulation:
    def __init__(self, session: Session, clients: list[str], config: NetworkConfig):
        self.session = session
        self.config = config
        self.rng = random.Random(config.seed)
        self.replicas: dict[str, Replica] = {}
        self.heap: list = []
        self._order = count()
        self.trace: list[dict] = []
        self.now = 0.0
        self.in_flight = 0
        self.reliable = False  # final-audit deliveries bypass drops
        self.rejected_commands = 0
        for client in clients:
            session.add_client(client)
        for client in clients:
            replica = Replica(session_id=session.id, client_id=client)
            for envelope in session.snapshot_envelope(client):
                replica.apply(envelope)
            self.replicas[client] = replica

    # ----------------------------------------------------------------- network

    def _latency(self) -> float:
        lat = self.config.latency_ms + self.rng.uniform(
            -self.config.jitter_ms, self.config.jitter_ms
        )
        if self.config.reorder_probability and self.rng.random() < self.config.reorder_probability:
            lat *= 2.0
        return max(lat, 0.1) / 1000.0

    def _dropped(self) -> bool:
        if self.reliable:
            return False
        return bool(
            self.config.drop_probability and self.rng.random() < self.config.drop_probability
        )

    def _schedule(self, at: float, kind: str, data) -> None:
        heapq.heappush(self.heap, (at, next(self._order), kind, data))

    def _send_down(self, envelope: Envelope) -> None:
        if envelope.to_client not in self.replicas:
            return
        if self._dropped():
            self.trace.append(
                {"t": self.now, "dir": "down", "to": envelope.to_client, "dropped": True,
                 "wire": envelope.to_wire()}
            )
            return
        self.in_flight += 1
        self._schedule(self.now + self._latency(), "to_client", envelope)

    def _send_up(self, client: str, action) -> None:
        if self._dropped():
            self.trace.append(
                {"t": self.now, "dir": "up", "from": client, "dropped": True,
                 "wire": {"kind": action.kind}}
            )
            return
        self.in_flight += 1
        self._schedule(self.now + self._latency(), "to_server", (client, action))

    # ------------------------------------------------------------------ events

    def _handle(self, kind: str, data) -> None:
        if kind == "tick":
            for envelope in self.session.tick(TICK_DT):
                self._send_down(envelope)
        elif kind == "to_client":
            self.in_flight -= 1
            envelope: Envelope = data
            self.trace.append(
                {"t": self.now, "dir": "down", "to": envelope.to_client,
                 "wire": envelope.to_wire()}
            )
            replica = self.replicas[envelope.to_client]
            for action in replica.apply(envelope):
                self._send_up(envelope.to_client, action)
        elif kind == "to_server":
            self.in_flight -= 1
            client, action = data
            self.trace.append(
                {"t": self.now, "dir": "up", "from": client, "wire": {"kind": action.kind}}
            )
            if isinstance(action, AssetReady):
                self.session.deliver_asset_ready(action.client, action.asset_id)
            elif isinstance(action, StateHashReport):
                self.session.deliver_state_hash_report(action.client, action.tick, action.digest)
            elif isinstance(action, CommandRequest):
                try:
                    self.session.enqueue_request(action.client, action.text)
                except ValidationFailedError:
                    self.rejected_commands += 1
        else:  # pragma: no cover
            raise ValueError(f"unknown event {kind!r}")

    # --------------------------------------------------------------------- run

    def _quiescent(self, script_done: bool) -> bool:
        return (
            script_done
            and self.in_flight == 0
            and not self.session.queue
            and self.session.pending is None
            and not self.session._outbox
            and self.session.all_tickets_terminal()
        )

    def run(
        self,
        script: Optional[list[ScriptCommand]] = None,
        max_time: float = 600.0,
    ) -> SimulationResult:
        script = sorted(script or [], key=lambda c: (c.at, c.client))
        for command in script:
            self.trace.append(
                {"t": command.at, "dir": "cmd", "from": command.client, "text": command.text}
            )
            self._schedule(
                command.at + self._latency(),
                "to_server",
                (command.client, CommandRequest(client=command.client, text=command.text)),
            )
            self.in_flight += 1
        script_end = max((c.at for c in script), default=0.0)

        next_tick = 0.0
        while self.now < max_time:
            while self.heap and self.heap[0][0] <= next_tick:
                at, _, kind, data = heapq.heappop(self.heap)
                self.now = at
                self._handle(kind, data)
            self.now = next_tick
            if self.now >= script_end and self._quiescent(script_done=True) and not self.heap:
                break
            self._handle("tick", None)
            next_tick += TICK_DT
        return self._result()

    def final_audit(self) -> None:
        """One reliable audit round: hash broadcast, reports, targeted repair."""
        self.reliable = True
        for envelope in self.session.emit_state_hash():
            self._send_down(envelope)
        self._drain()
        for envelope in self.session.run_audit():
            self._send_down(envelope)
        self._drain()
        self.reliable = False

    def _drain(self) -> None:
        while self.heap:
            at, _, kind, data = heapq.heappop(self.heap)
            if kind == "tick":
                continue
            self.now = max(self.now, at)
            self._handle(kind, data)

    def _result(self) -> SimulationResult:
        return SimulationResult(
            trace=self.trace,
            authoritative_digest=self.session.scene.scene_hash(),
            client_digests={c: r.digest() for c, r in sorted(self.replicas.items())},
            tickets={t.id: (t.state, t.detail) for t in self.session.tickets.values()},
            rejected_commands=self.rejected_commands,
            virtual_time=self.now,
        )


def run_to_convergence(
    session: Session,
    clients: list[str],
    config: NetworkConfig,
    script: list[ScriptCommand],
    max_time: float = 600.0,
) -> SimulationResult:
    """Run a scripted session; if replicas have not converged when the run
    quiesces, perform at most one reliable audit/snapshot cycle."""
    sim = Simulation(session, clients, config)
    result = sim.run(script, max_time=max_time)
    if not result.converged:
        sim.final_audit()
        result = sim._result()
        result.audit_cycles = 1
    return result
