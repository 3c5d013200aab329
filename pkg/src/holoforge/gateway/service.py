"""HTTP + WebSocket gateway.

REST handles session lifecycle; one WebSocket per client session carries
length-prefixed JSON frames: replication envelopes and event notices down,
{submit_command, asset_ready, state_hash_report} up. Each session runs on
its own tick task; sessions never share mutable state.
"""

from __future__ import annotations

import asyncio
import json
import logging
import secrets
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from itertools import count
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from ..assets.catalog import Catalog, load_mock_catalog
from ..assets.pipeline import AssetPipeline, SimulatedFetcher, VirtualClock
from ..assets.records import Budget
from ..errors import EngineError, ValidationFailedError
from ..replication.messages import Envelope, encode_frame
from ..replication.session import Session
from ..resolver.clients import LiveCompletionClient, MockCompletionClient
from ..resolver.config import ResolverConfig
from ..resolver.resolver import CompletionLog, Resolver
from .config import GatewayConfig

logger = logging.getLogger(__name__)

PERSISTED_KINDS = {"event", "resolution_announce", "spawn_commit"}
CLIENT_KIND_ALIASES = {"submit_command": "command_request"}


class CreateSessionRequest(BaseModel):
    mode: str


@dataclass
class SessionRunner:
    session: Session
    join_token: str
    events_path: Path
    queues: dict[str, asyncio.Queue] = field(default_factory=dict)
    task: Optional[asyncio.Task] = None

    def route(self, envelopes: list[Envelope]) -> None:
        for env in envelopes:
            queue = self.queues.get(env.to_client)
            if queue is not None:
                queue.put_nowait(encode_frame(env.to_wire()))
            if env.kind in PERSISTED_KINDS:
                with open(self.events_path, "a", encoding="utf-8") as f:
                    f.write(json.dumps(env.to_wire(), sort_keys=True) + "\n")


class GatewayRuntime:
    def __init__(self, config: GatewayConfig):
        self.config = config
        self.runners: dict[str, SessionRunner] = {}
        self._session_counter = count(1)
        config.data_path.mkdir(parents=True, exist_ok=True)
        self.completion_log = CompletionLog(path=config.completion_log_path)
        self.catalog = self._build_catalog()

    def _build_catalog(self) -> Catalog:
        if self.config.catalog_path:
            return Catalog.from_file(self.config.catalog_path)
        return load_mock_catalog()

    def _build_resolver(self) -> Resolver:
        resolver_config = ResolverConfig(
            collision_temperature=self.config.collision_temperature,
            codegen_temperature=self.config.codegen_temperature,
            frequency_penalty=self.config.frequency_penalty,
            elaboration_temperature=self.config.elaboration_temperature,
            client_kind="mock" if self.config.mock_llm else "live",
            elaborate_prompts=self.config.elaborate_prompts,
        )
        if self.config.mock_llm:
            client = MockCompletionClient()
        else:
            client = LiveCompletionClient(
                base_url=self.config.live_llm_base_url,
                api_key=self.config.live_llm_api_key,
                model=self.config.live_llm_model,
            )
        return Resolver(config=resolver_config, client=client, log=self.completion_log)

    def _build_assets(self, seed: int) -> AssetPipeline:
        clock = VirtualClock()
        return AssetPipeline(
            catalog=self.catalog,
            fetcher=SimulatedFetcher(clock),
            clock=clock,
            budget=Budget(
                max_scene_vertices=self.config.max_scene_vertices,
                max_single_asset_vertices=self.config.max_single_asset_vertices,
            ),
            seed=seed,
        )

    def create_session(self, mode: str) -> SessionRunner:
        if mode not in ("pong", "holodeck"):
            raise HTTPException(status_code=422, detail=f"unknown mode {mode!r}")
        if len(self.runners) >= self.config.max_sessions:
            raise HTTPException(status_code=409, detail="CAPACITY: session cap reached")
        session_id = f"s{next(self._session_counter)}"
        session = Session(
            session_id,
            mode,
            self._build_resolver(),
            self._build_assets(self.config.seed),
            seed=self.config.seed,
            audit_period=self.config.audit_period_ticks,
            snapshot_period=self.config.snapshot_period_ticks,
            barrier_timeout=self.config.barrier_timeout_ticks,
            max_clients=self.config.max_clients_per_session,
        )
        events_dir = self.config.data_path / "sessions" / session_id
        events_dir.mkdir(parents=True, exist_ok=True)
        runner = SessionRunner(
            session=session,
            join_token=secrets.token_hex(8),
            events_path=events_dir / "events.jsonl",
        )
        runner.task = asyncio.get_running_loop().create_task(self._run(runner))
        self.runners[session_id] = runner
        return runner

    async def _run(self, runner: SessionRunner) -> None:
        dt = 1.0 / self.config.tick_rate
        try:
            while True:
                await asyncio.sleep(dt)
                runner.route(runner.session.tick(dt))
        except asyncio.CancelledError:
            pass

    def get(self, session_id: str) -> SessionRunner:
        runner = self.runners.get(session_id)
        if runner is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return runner

    async def drop(self, session_id: str) -> None:
        runner = self.get(session_id)
        if runner.task is not None:
            runner.task.cancel()
            try:
                await runner.task
            except asyncio.CancelledError:
                pass
        del self.runners[session_id]

    async def shutdown(self) -> None:
        for session_id in list(self.runners):
            await self.drop(session_id)


def create_app(config: Optional[GatewayConfig] = None) -> FastAPI:
    config = config or GatewayConfig()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        app.state.runtime = GatewayRuntime(config)
        yield
        await app.state.runtime.shutdown()

    app = FastAPI(title="holoforge gateway", lifespan=lifespan)

    @app.post("/sessions")
    async def create_session(body: CreateSessionRequest):
        runtime: GatewayRuntime = app.state.runtime
        runner = runtime.create_session(body.mode)
        return {
            "session_id": runner.session.id,
            "mode": runner.session.mode,
            "join_token": runner.join_token,
        }

    @app.get("/sessions")
    async def list_sessions():
        runtime: GatewayRuntime = app.state.runtime
        return [
            {
                "session_id": r.session.id,
                "mode": r.session.mode,
                "clients": sorted(r.session.clients),
                "tick": r.session.ticks,
            }
            for r in runtime.runners.values()
        ]

    @app.get("/sessions/{session_id}/state")
    async def session_state(session_id: str):
        runner = app.state.runtime.get(session_id)
        session = runner.session
        state = {
            "session_id": session.id,
            "mode": session.mode,
            "tick": session.ticks,
            "time_scale": session.scene.time_scale,
            "scene": session.scene.to_snapshot(),
            "digest": session.scene.scene_hash(),
            "tickets": {
                t.id: {"state": t.state, "detail": t.detail, "client": t.client}
                for t in session.tickets.values()
            },
        }
        if session.match is not None:
            state["scores"] = dict(session.match.scores)
            state["ball_label"] = session.match.ball_label
            state["paddle_labels"] = {
                p: slot.paddle_label for p, slot in session.match.players.items()
            }
            state["players"] = dict(session.players_by_client)
        return state

    @app.delete("/sessions/{session_id}")
    async def delete_session(session_id: str):
        await app.state.runtime.drop(session_id)
        return {"deleted": session_id}

    @app.websocket("/sessions/{session_id}/ws")
    async def session_ws(ws: WebSocket, session_id: str):
        runtime: GatewayRuntime = app.state.runtime
        runner = runtime.runners.get(session_id)
        client_id = ws.query_params.get("client_id", "")
        token = ws.query_params.get("token", "")
        if runner is None or not client_id or token != runner.join_token:
            await ws.close(code=4403)
            return
        if client_id in runner.queues:
            await ws.close(code=4409)  # one socket per client session
            return
        session = runner.session
        try:
            session.add_client(client_id)
        except EngineError as exc:
            await ws.close(code=4409, reason=exc.code)
            return
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue()
        runner.queues[client_id] = queue
        for envelope in session.snapshot_envelope(client_id):
            queue.put_nowait(encode_frame(envelope.to_wire()))

        async def sender():
            while True:
                frame = await queue.get()
                await ws.send_bytes(frame)

        send_task = asyncio.get_running_loop().create_task(sender())
        try:
            while True:
                raw = await ws.receive_bytes()
                _handle_client_frame(runner, client_id, raw)
        except WebSocketDisconnect:
            pass
        finally:
            send_task.cancel()
            runner.queues.pop(client_id, None)
            session.remove_client(client_id)

    return app


def _handle_client_frame(runner: SessionRunner, client_id: str, raw: bytes) -> None:
    session = runner.session
    try:
        sep = raw.index(b":")
        data = json.loads(raw[sep + 1 :].decode())
    except (ValueError, json.JSONDecodeError):
        logger.warning("undecodable frame from %s", client_id)
        return
    kind = CLIENT_KIND_ALIASES.get(data.get("kind", ""), data.get("kind", ""))
    if kind == "command_request":
        request_id = data.get("request_id", "")
        try:
            ticket = session.enqueue_request(client_id, data.get("text", ""))
            result = {"request_id": request_id, "ticket": ticket}
        except ValidationFailedError as exc:
            result = {
                "request_id": request_id,
                "error": exc.code,
                "detail": exc.message,
                "diagnostics": [
                    {"code": d.code, "message": d.message} for d in exc.diagnostics
                ],
            }
        except EngineError as exc:
            result = {"request_id": request_id, "error": exc.code, "detail": exc.message}
        runner.route(session.notify(client_id, "submit_result", result))
    elif kind == "asset_ready":
        session.deliver_asset_ready(client_id, data.get("asset_id", ""))
    elif kind == "state_hash_report":
        session.deliver_state_hash_report(
            client_id, int(data.get("tick", -1)), data.get("digest", "")
        )
    else:
        logger.warning("unknown client frame kind %r from %s", kind, client_id)
