"""Server-authoritative session state machine.

One session owns one scene (and, in pong mode, one match). Inbound client
events mutate bookkeeping only; all state transitions happen inside
``advance``/``tick`` so every interleaving of event arrivals can be explored
exhaustively. Emissions are per-recipient sequence-stamped envelopes.

Transformation lifecycle: queued -> resolving (pop + time dilation) ->
downloading (asset directives out, barrier open) -> committed (all clients
acked every asset) or failed (resolution/asset error or barrier timeout).
At most one transformation is ever pending and the scene time scale is 0.01
exactly while one is.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import count
from typing import Any, Optional

from ..assets.pipeline import AssetPipeline
from ..core.rooms import build_holodeck_scene
from ..core.scene import SceneGraph
from ..dsl.ast import ALL_CAPABILITIES, Load, Program, Repeat, Scale, Statement
from ..dsl.formatter import format_program
from ..dsl.interpreter import execute
from ..dsl.parser import ParseError, parse
from ..dsl.validator import validate
from ..errors import (
    CapacityError,
    ClientError,
    ClientTimeoutError,
    EngineError,
    UnknownClientError,
    ValidationFailedError,
)
from ..pong.match import (
    ChangeBall,
    ChangePaddle,
    MatchState,
    NoCommand,
    ScoreEvent,
    ServeEvent,
    HitEvent,
    TransformRequested,
    apply_ball_transformation,
    apply_paddle_transformation,
    build_match,
    drive_paddles,
    parse_player_command,
    step_match,
)
from ..resolver.resolver import Resolver
from .messages import (
    AssetDirective,
    Envelope,
    EventNotice,
    ResolutionAnnounce,
    Snapshot,
    SpawnCommit,
    StateHash,
    TimeScale,
)

DILATED_TIME_SCALE = 0.01
AUDIT_PERIOD_TICKS = 120
SNAPSHOT_PERIOD_TICKS = 12
BARRIER_TIMEOUT_TICKS = 600
MAX_CLIENTS = 8
DIGEST_HISTORY_LIMIT = 64


@dataclass
class Ticket:
    id: str
    client: str
    text: str
    state: str = "queued"  # queued|resolving|downloading|committed|failed
    detail: str = ""

    @property
    def terminal(self) -> bool:
        return self.state in ("committed", "failed")


@dataclass
class QueuedRequest:
    ticket_id: str
    client: str
    payload: Any  # ChangeBall | ChangePaddle | TransformRequested | Program


@dataclass
class Pending:
    ticket_id: str
    requester: str
    kind: str = ""  # ball_swap | paddle_swap | collision | program
    label: str = ""
    player: str = ""
    records: list = field(default_factory=list)
    awaiting: set = field(default_factory=set)  # {(client_id, asset_id)}
    program: Optional[Program] = None
    started_at: int = 0


def _load_queries(statements: tuple[Statement, ...]) -> list[str]:
    queries: list[str] = []
    for stmt in statements:
        if isinstance(stmt, Load):
            if stmt.query not in queries:
                queries.append(stmt.query)
        elif isinstance(stmt, Repeat):
            for q in _load_queries(stmt.body):
                if q not in queries:
                    queries.append(q)
    return queries


class Session:
    def __init__(
        self,
        session_id: str,
        mode: str,
        resolver: Resolver,
        assets: AssetPipeline,
        seed: int = 0,
        capabilities: frozenset[str] = ALL_CAPABILITIES,
        audit_period: int = AUDIT_PERIOD_TICKS,
        snapshot_period: int = SNAPSHOT_PERIOD_TICKS,
        barrier_timeout: int = BARRIER_TIMEOUT_TICKS,
        max_clients: int = MAX_CLIENTS,
    ):
        if mode not in ("pong", "holodeck"):
            raise ValueError(f"unknown mode {mode!r}")
        self.id = session_id
        self.mode = mode
        self.resolver = resolver
        self.assets = assets
        self.capabilities = capabilities
        self.audit_period = audit_period
        self.snapshot_period = snapshot_period
        self.barrier_timeout = barrier_timeout
        self.max_clients = max_clients

        self.match: Optional[MatchState] = None
        if mode == "pong":
            self.match = build_match(seed)
            self.match.paddle_ai = False  # the session's paddle script drives poses
            self.scene: SceneGraph = self.match.scene
        else:
            self.scene = build_holodeck_scene(seed)

        self.clients: dict[str, dict] = {}
        self.players_by_client: dict[str, str] = {}
        self.queue: list = []
        self._arrival = count()
        self.pending: Optional[Pending] = None
        self.tickets: dict[str, Ticket] = {}
        self._ticket_counter = count(1)
        self._seqs: dict[str, int] = {}
        self.ticks = 0
        self.digest_history: dict[int, str] = {}
        self.reports: dict[str, tuple[int, str]] = {}
        self._outbox: list[Envelope] = []

    # ------------------------------------------------------------- membership

    def add_client(self, client_id: str) -> None:
        if client_id in self.clients:
            return
        if len(self.clients) >= self.max_clients:
            raise CapacityError(f"session {self.id} is full")
        self.clients[client_id] = {}
        self._seqs.setdefault(client_id, 0)
        if self.mode == "pong":
            taken = set(self.players_by_client.values())
            for slot in ("p1", "p2"):
                if slot not in taken:
                    self.players_by_client[client_id] = slot
                    break

    def remove_client(self, client_id: str) -> None:
        """Departure: the barrier stops waiting on this client's acks."""
        if client_id not in self.clients:
            return
        del self.clients[client_id]
        self.players_by_client.pop(client_id, None)
        self.reports.pop(client_id, None)
        if self.pending is not None:
            self.pending.awaiting = {
                (c, a) for (c, a) in self.pending.awaiting if c != client_id
            }

    def require_client(self, client_id: str) -> None:
        if client_id not in self.clients:
            raise UnknownClientError(f"client {client_id!r} has not joined session {self.id}")

    # --------------------------------------------------------------- emission

    def _emit(self, out: list[Envelope], message, to: Optional[str] = None) -> None:
        targets = [to] if to is not None else sorted(self.clients)
        for client in targets:
            self._seqs[client] = self._seqs.get(client, 0) + 1
            out.append(Envelope(self.id, self._seqs[client], client, message))

    def _emit_ticket(self, out: list[Envelope], ticket: Ticket) -> None:
        self._emit(
            out,
            EventNotice(
                event="ticket_status",
                data={
                    "ticket": ticket.id,
                    "client": ticket.client,
                    "state": ticket.state,
                    "detail": ticket.detail,
                },
            ),
        )

    def _set_ticket(self, out: list[Envelope], ticket: Ticket, state: str, detail: str = "") -> None:
        ticket.state = state
        if detail:
            ticket.detail = detail
        self._emit_ticket(out, ticket)

    def _set_time_scale(self, out: list[Envelope], factor: float) -> None:
        self.scene.time_scale = factor
        self._emit(out, TimeScale(factor))

    # ---------------------------------------------------------------- enqueue

    def enqueue_request(self, client: str, text: str) -> str:
        self.require_client(client)
        payload, code_text = self._route_command(client, text)
        return self._push_request(client, text, payload, code_text)

    def _route_command(self, client: str, text: str):
        if self.mode == "pong":
            command = parse_player_command(text)
            if isinstance(command, NoCommand):
                raise ValidationFailedError(f"not a recognized player command: {text!r}")
            if isinstance(command, ChangePaddle) and client not in self.players_by_client:
                raise ValidationFailedError("spectators have no paddle to change")
            return command, None
        elaborated = self.resolver.elaborate_scene_prompt(text)
        program_text = self.resolver.generate_scene_program(elaborated)
        if program_text is None:
            raise ValidationFailedError(f"could not derive a program from {text!r}")
        try:
            program = parse(program_text)
        except ParseError as exc:
            raise ValidationFailedError(f"generated program does not parse: {exc}") from exc
        diagnostics = validate(program, self.scene, self.capabilities)
        if diagnostics:
            raise ValidationFailedError(
                "; ".join(f"{d.code}: {d.message}" for d in diagnostics),
                diagnostics=diagnostics,
            )
        return program, format_program(program)

    def _push_request(self, client: str, text: str, payload, code_text: Optional[str]) -> str:
        ticket = Ticket(id=f"t{next(self._ticket_counter)}", client=client, text=text)
        self.tickets[ticket.id] = ticket
        heapq.heappush(
            self.queue,
            (self.ticks, client, next(self._arrival), QueuedRequest(ticket.id, client, payload)),
        )
        self._emit_ticket(self._outbox, ticket)
        if code_text is not None:
            self._emit(
                self._outbox,
                EventNotice(event="code_panel", data={"ticket": ticket.id, "text": code_text}),
            )
        return ticket.id

    def _enqueue_internal(self, player: str, request: TransformRequested) -> str:
        client = next(
            (c for c, p in sorted(self.players_by_client.items()) if p == player), player
        )
        ticket = Ticket(
            id=f"t{next(self._ticket_counter)}",
            client=client,
            text=f"collision {request.ball_label} x {request.paddle_label}",
        )
        self.tickets[ticket.id] = ticket
        heapq.heappush(
            self.queue,
            (self.ticks, client, next(self._arrival), QueuedRequest(ticket.id, client, request)),
        )
        self._emit_ticket(self._outbox, ticket)
        return ticket.id

    # ----------------------------------------------------------- client events

    def deliver_asset_ready(self, client: str, asset_id: str) -> None:
        self.require_client(client)
        if self.pending is None:
            return
        key = (client, asset_id)
        if key in self.pending.awaiting:
            self.pending.awaiting.discard(key)
            total = len(self.clients) * len(self.pending.records)
            self._emit(
                self._outbox,
                EventNotice(
                    event="barrier",
                    data={
                        "ticket": self.pending.ticket_id,
                        "client": client,
                        "asset_id": asset_id,
                        "acked": total - len(self.pending.awaiting),
                        "total": total,
                    },
                ),
            )

    def deliver_state_hash_report(self, client: str, tick: int, digest: str) -> None:
        self.require_client(client)
        self.reports[client] = (int(tick), digest)

    def notify(self, client: str, event: str, data: dict) -> list[Envelope]:
        """Targeted gateway-level event (submit results and the like)."""
        out: list[Envelope] = []
        self._emit(out, EventNotice(event=event, data=data), to=client)
        return out

    # ----------------------------------------------------------------- advance

    def advance(self) -> list[Envelope]:
        out: list[Envelope] = []
        if self._outbox:
            out.extend(self._outbox)
            self._outbox = []
        if self.pending is None and self.queue:
            _, _, _, request = heapq.heappop(self.queue)
            ticket = self.tickets[request.ticket_id]
            self._set_ticket(out, ticket, "resolving")
            self.pending = Pending(
                ticket_id=ticket.id, requester=request.client, started_at=self.ticks
            )
            self._set_time_scale(out, DILATED_TIME_SCALE)
            try:
                self._start_request(request, out)
                self._set_ticket(out, ticket, "downloading")
            except EngineError as exc:
                code = (
                    "RESOLUTION_FAILED"
                    if isinstance(exc, (ClientError, ClientTimeoutError))
                    else "ASSET_FAILED"
                )
                self._abort_pending(out, f"{code}: {exc.code}: {exc.message}")
        elif self.pending is not None:
            if not self.pending.awaiting:
                self._commit(out)
            elif self.ticks - self.pending.started_at > self.barrier_timeout:
                self._abort_pending(out, "ASSET_FAILED: barrier timeout")
        return out

    def _start_request(self, request: QueuedRequest, out: list[Envelope]) -> None:
        pending = self.pending
        payload = request.payload
        if isinstance(payload, ChangeBall):
            pending.kind = "ball_swap"
            pending.label = payload.label
            pending.records = [self._acquire(payload.label)]
        elif isinstance(payload, ChangePaddle):
            pending.kind = "paddle_swap"
            pending.label = payload.label
            pending.player = self.players_by_client[request.client]
            pending.records = [self._acquire(payload.label)]
        elif isinstance(payload, TransformRequested):
            resolution = self.resolver.resolve_collision(
                payload.ball_label, payload.paddle_label
            )
            pending.kind = "collision"
            pending.label = resolution.output_object
            pending.player = payload.player
            self._emit(
                out,
                ResolutionAnnounce(
                    ball=resolution.ball_object,
                    paddle=resolution.paddle_object,
                    output=resolution.output_object,
                    ticket=pending.ticket_id,
                ),
            )
            pending.records = [self._acquire(resolution.output_object)]
        elif isinstance(payload, Program):
            pending.kind = "program"
            pending.program = payload
            pending.records = [self._acquire(q) for q in _load_queries(payload.statements)]
        else:  # pragma: no cover
            raise EngineError(f"unhandled request payload {payload!r}")
        pending.awaiting = {
            (client, record.id)
            for client in sorted(self.clients)
            for record in pending.records
        }
        for record in pending.records:
            self._emit(
                out,
                AssetDirective(
                    asset_id=record.id,
                    download_url=record.download_url,
                    ticket=pending.ticket_id,
                ),
            )

    def _acquire(self, query: str):
        handle = self.assets.acquire(query, scene_vertex_load=self.scene.vertex_load())
        return handle.record

    def _abort_pending(self, out: list[Envelope], detail: str) -> None:
        ticket = self.tickets[self.pending.ticket_id]
        self.pending = None
        self._set_time_scale(out, 1.0)
        self._set_ticket(out, ticket, "failed", detail)

    def _emit_swap_code(self, out: list[Envelope], ticket: Ticket, binding: str, entity) -> None:
        """Echo the transformation as canonical command text for the code panel."""
        program = Program(
            (
                Load(query=entity.name, binding=binding),
                Scale(binding=binding, target=entity.extents().max_component()),
            )
        )
        self._emit(
            out,
            EventNotice(
                event="code_panel",
                data={"ticket": ticket.id, "text": format_program(program)},
            ),
        )

    def _commit(self, out: list[Envelope]) -> None:
        pending = self.pending
        ticket = self.tickets[pending.ticket_id]
        if pending.kind in ("ball_swap", "collision"):
            entity = apply_ball_transformation(self.match, pending.records[0], pending.label)
            self._emit(out, SpawnCommit(spec=entity.to_record(), ticket=ticket.id))
            self._emit_swap_code(out, ticket, "ball", entity)
            self._emit(
                out,
                EventNotice(
                    event="match",
                    data={"type": "transform", "target": "ball", "label": pending.label},
                ),
            )
            self._set_ticket(out, ticket, "committed")
        elif pending.kind == "paddle_swap":
            entity = apply_paddle_transformation(
                self.match, pending.player, pending.records[0], pending.label
            )
            self._emit(out, SpawnCommit(spec=entity.to_record(), ticket=ticket.id))
            self._emit_swap_code(out, ticket, "paddle", entity)
            self._emit(
                out,
                EventNotice(
                    event="match",
                    data={
                        "type": "transform",
                        "target": "paddle",
                        "player": pending.player,
                        "label": pending.label,
                    },
                ),
            )
            self._set_ticket(out, ticket, "committed")
        elif pending.kind == "program":
            report = execute(
                pending.program,
                self.scene,
                self.assets,
                capabilities=self.capabilities,
                owner=pending.requester,
            )
            if report.touched_existing:
                self._emit(out, Snapshot(scene=self.scene.to_snapshot(), tick=self.ticks))
            else:
                for eid in report.entities_created:
                    if eid in self.scene.entities:
                        self._emit(
                            out,
                            SpawnCommit(
                                spec=self.scene.entity(eid).to_record(), ticket=ticket.id
                            ),
                        )
            if report.ok:
                self._set_ticket(out, ticket, "committed")
            else:
                failed = report.failed_outcome
                self._set_ticket(
                    out, ticket, "failed", f"{failed.error_code}: {failed.message}"
                )
        self.pending = None
        self._set_time_scale(out, 1.0)

    # -------------------------------------------------------------------- tick

    def tick(self, dt: float = 1.0 / 60.0) -> list[Envelope]:
        self.ticks += 1
        out: list[Envelope] = []
        if self.match is not None:
            seated = set(self.players_by_client.values())
            drive_paddles(self.match, seated, dt * self.scene.time_scale)
            for event in step_match(self.match, dt):
                if isinstance(event, TransformRequested):
                    self._enqueue_internal(event.player, event)
                elif isinstance(event, ScoreEvent):
                    self._emit(
                        out,
                        EventNotice(
                            event="match",
                            data={"type": "score", "scorer": event.scorer, "scores": event.scores},
                        ),
                    )
                elif isinstance(event, ServeEvent):
                    self._emit(
                        out,
                        EventNotice(
                            event="match",
                            data={"type": "serve", "toward": event.toward},
                        ),
                    )
                elif isinstance(event, HitEvent):
                    self._emit(
                        out,
                        EventNotice(event="match", data={"type": "hit", "player": event.player}),
                    )
        out.extend(self.advance())
        if (
            self.match is not None
            and self.snapshot_period
            and self.ticks % self.snapshot_period == 0
        ):
            self._emit(out, Snapshot(scene=self.scene.to_snapshot(), tick=self.ticks))
        if self.audit_period and self.ticks % self.audit_period == 0:
            out.extend(self.run_audit())
            out.extend(self.emit_state_hash())
        return out

    # ------------------------------------------------------------------- audit

    def emit_state_hash(self) -> list[Envelope]:
        out: list[Envelope] = []
        digest = self.scene.scene_hash()
        self.digest_history[self.ticks] = digest
        while len(self.digest_history) > DIGEST_HISTORY_LIMIT:
            del self.digest_history[min(self.digest_history)]
        self._emit(out, StateHash(tick=self.ticks, digest=digest))
        return out

    def audit_consistency(self) -> list[str]:
        """Clients whose reported digest mismatches ours at their tick."""
        divergent = []
        for client in sorted(self.reports):
            tick, digest = self.reports[client]
            expected = self.digest_history.get(tick)
            if expected is not None and digest != expected:
                divergent.append(client)
        return divergent

    def run_audit(self) -> list[Envelope]:
        out: list[Envelope] = []
        divergent = set(self.audit_consistency())
        for client in sorted(self.reports):
            tick, _ = self.reports[client]
            if client in divergent:
                self._emit(
                    out, Snapshot(scene=self.scene.to_snapshot(), tick=self.ticks), to=client
                )
                del self.reports[client]
            elif tick in self.digest_history:
                del self.reports[client]  # matched; retained only if tick unknown
        return out

    # ------------------------------------------------------------------- misc

    def all_tickets_terminal(self) -> bool:
        return all(t.terminal for t in self.tickets.values())

    def snapshot_envelope(self, client: str) -> list[Envelope]:
        out: list[Envelope] = []
        self._emit(out, Snapshot(scene=self.scene.to_snapshot(), tick=self.ticks), to=client)
        return out
