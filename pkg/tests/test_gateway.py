from __future__ import annotations

import json
import time

import pytest
from fastapi.testclient import TestClient

from holoforge.gateway import GatewayConfig, create_app, load_config
from holoforge.gateway.cli import build_parser
from holoforge.replication.messages import decode_frames, encode_frame
from holoforge.resolver import CompletionLog, serialize_record


@pytest.fixture
def gateway(tmp_path):
    config = GatewayConfig(data_dir=str(tmp_path / "data"), seed=5, max_sessions=2)
    app = create_app(config)
    with TestClient(app) as client:
        yield client, config


def send(ws, payload: dict) -> None:
    ws.send_bytes(encode_frame(payload))


def recv(ws) -> dict:
    frames, _ = decode_frames(ws.receive_bytes())
    return frames[0]


def recv_until(ws, kind: str, timeout: float = 8.0, on_directive=None) -> dict:
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        frame = recv(ws)
        if frame["kind"] == "asset_directive" and on_directive:
            on_directive(frame)
        if frame["kind"] == kind:
            return frame
    raise AssertionError(f"no {kind} frame within {timeout}s")


# -------------------------------------------------------------------- sessions


def test_create_holodeck_room(gateway):
    client, _ = gateway
    response = client.post("/sessions", json={"mode": "holodeck"})
    assert response.status_code == 200
    sid = response.json()["session_id"]
    state = client.get(f"/sessions/{sid}/state").json()
    entities = state["scene"]["entities"]
    structural = {e["name"]: e["position"] for e in entities if e["kind"] == "structural"}
    assert len(structural) == 6
    quantum = 1e-4
    assert [c * quantum for c in structural["North Wall"]] == [0.0, 0.0, 5.0]
    assert [c * quantum for c in structural["East Wall"]] == [5.0, 0.0, 0.0]
    assert [c * quantum for c in structural["South Wall"]] == [0.0, 0.0, -5.0]
    assert [c * quantum for c in structural["West Wall"]] == [-5.0, 0.0, 0.0]


def test_create_pong_court(gateway):
    client, _ = gateway
    sid = client.post("/sessions", json={"mode": "pong"}).json()["session_id"]
    state = client.get(f"/sessions/{sid}/state").json()
    entities = state["scene"]["entities"]
    names = [e["name"] for e in entities]
    assert "ball" in names
    assert sum(1 for n in names if "paddle" in n) == 2
    assert state["ball_label"] == "ball"


def test_session_capacity(gateway):
    client, _ = gateway
    assert client.post("/sessions", json={"mode": "pong"}).status_code == 200
    assert client.post("/sessions", json={"mode": "pong"}).status_code == 200
    response = client.post("/sessions", json={"mode": "pong"})
    assert response.status_code == 409
    assert "CAPACITY" in response.json()["detail"]


def test_unknown_mode_rejected(gateway):
    client, _ = gateway
    assert client.post("/sessions", json={"mode": "chess"}).status_code == 422


def test_list_sessions(gateway):
    client, _ = gateway
    sid = client.post("/sessions", json={"mode": "holodeck"}).json()["session_id"]
    listing = client.get("/sessions").json()
    assert [s["session_id"] for s in listing] == [sid]


# -------------------------------------------------------------------- commands


def test_submit_pong_command_full_flow(gateway):
    client, config = gateway
    created = client.post("/sessions", json={"mode": "pong"}).json()
    sid, token = created["session_id"], created["join_token"]
    with client.websocket_connect(
        f"/sessions/{sid}/ws?client_id=alice&token={token}"
    ) as ws:
        assert recv(ws)["kind"] == "snapshot"
        send(ws, {"kind": "submit_command", "text": "change ball to egg", "request_id": "r1"})

        def ack(frame):
            send(ws, {"kind": "asset_ready", "asset_id": frame["asset_id"]})

        commit = recv_until(ws, "spawn_commit", on_directive=ack)
        assert commit["spec"]["name"] == "egg"
    state = client.get(f"/sessions/{sid}/state").json()
    assert state["ball_label"] == "egg"


def test_submit_holodeck_prompt_executes_program(gateway):
    client, _ = gateway
    created = client.post("/sessions", json={"mode": "holodeck"}).json()
    sid, token = created["session_id"], created["join_token"]
    with client.websocket_connect(f"/sessions/{sid}/ws?client_id=bob&token={token}") as ws:
        assert recv(ws)["kind"] == "snapshot"
        send(
            ws,
            {"kind": "submit_command", "text": "Change the scene into a bedroom", "request_id": "r1"},
        )
        code_panel = recv_until(ws, "event", timeout=4.0)
        while not (code_panel["event"] == "code_panel"):
            code_panel = recv_until(ws, "event", timeout=4.0)
        assert 'load "bed" as bed' in code_panel["data"]["text"]

        def ack(frame):
            send(ws, {"kind": "asset_ready", "asset_id": frame["asset_id"]})

        recv_until(ws, "spawn_commit", on_directive=ack)
    state = client.get(f"/sessions/{sid}/state").json()
    names = [e["name"] for e in state["scene"]["entities"]]
    assert "bed" in names


def test_submit_invalid_command_fails_validation(gateway):
    client, _ = gateway
    created = client.post("/sessions", json={"mode": "pong"}).json()
    sid, token = created["session_id"], created["join_token"]
    with client.websocket_connect(f"/sessions/{sid}/ws?client_id=eve&token={token}") as ws:
        recv(ws)
        send(ws, {"kind": "submit_command", "text": "hello world", "request_id": "r9"})
        frame = recv_until(ws, "event")
        while frame.get("event") != "submit_result":
            frame = recv_until(ws, "event")
        assert frame["data"]["error"] == "VALIDATION_FAILED"
        assert frame["data"]["request_id"] == "r9"


def test_ws_rejects_bad_token(gateway):
    client, _ = gateway
    created = client.post("/sessions", json={"mode": "pong"}).json()
    sid = created["session_id"]
    from starlette.websockets import WebSocketDisconnect

    with pytest.raises(WebSocketDisconnect):
        with client.websocket_connect(f"/sessions/{sid}/ws?client_id=x&token=wrong") as ws:
            ws.receive_bytes()


# ---------------------------------------------------------------------- config


def test_config_defaults_and_file_and_env(tmp_path):
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"port": 9000, "mock_llm": True}))
    config = load_config(
        path=config_path,
        env={"HOLOFORGE_PORT": "9100", "HOLOFORGE_ELABORATE_PROMPTS": "false"},
        overrides={"data_dir": "override-dir"},
    )
    assert config.port == 9100  # env beats file
    assert config.elaborate_prompts is False
    assert config.data_dir == "override-dir"
    assert config.tick_rate == 60  # untouched default


def test_config_rejects_unknown_keys(tmp_path):
    config_path = tmp_path / "bad.json"
    config_path.write_text(json.dumps({"not_a_key": 1}))
    with pytest.raises(ValueError):
        load_config(path=config_path, env={})


def test_cli_parser_flags():
    args = build_parser().parse_args(
        ["--port", "9001", "--data-dir", "d", "--no-mock-llm", "--seed", "3"]
    )
    assert args.port == 9001
    assert args.data_dir == "d"
    assert args.mock_llm is False
    assert args.seed == 3


# ----------------------------------------------------------------- persistence


def test_completion_log_replay_byte_identical(tmp_path):
    log_path = tmp_path / "completions.jsonl"
    log = CompletionLog(path=log_path)
    from holoforge.resolver import Resolver

    resolver = Resolver(log=log)
    resolver.resolve_collision("fire", "ice")
    resolver.resolve_collision("egg", "clock")
    original = log_path.read_bytes()
    replayed = "".join(
        serialize_record(r) + "\n" for r in CompletionLog.replay(log_path)
    ).encode()
    assert replayed == original


def test_event_log_persisted(gateway):
    client, config = gateway
    created = client.post("/sessions", json={"mode": "pong"}).json()
    sid, token = created["session_id"], created["join_token"]
    with client.websocket_connect(f"/sessions/{sid}/ws?client_id=a&token={token}") as ws:
        recv(ws)
        send(ws, {"kind": "submit_command", "text": "change ball to egg", "request_id": "r"})

        def ack(frame):
            send(ws, {"kind": "asset_ready", "asset_id": frame["asset_id"]})

        recv_until(ws, "spawn_commit", on_directive=ack)
    client.delete(f"/sessions/{sid}")
    events_path = config.data_path / "sessions" / sid / "events.jsonl"
    lines = [json.loads(l) for l in events_path.read_text().splitlines()]
    kinds = {l["kind"] for l in lines}
    assert "spawn_commit" in kinds and "event" in kinds


def test_no_orphan_tickets_after_session_run(gateway):
    client, _ = gateway
    created = client.post("/sessions", json={"mode": "pong"}).json()
    sid, token = created["session_id"], created["join_token"]
    with client.websocket_connect(f"/sessions/{sid}/ws?client_id=a&token={token}") as ws:
        recv(ws)
        for i, text in enumerate(["change ball to egg", "change paddle to knife"]):
            send(ws, {"kind": "submit_command", "text": text, "request_id": f"r{i}"})
        commits = 0

        def ack(frame):
            send(ws, {"kind": "asset_ready", "asset_id": frame["asset_id"]})

        while commits < 2:
            frame = recv_until(ws, "spawn_commit", on_directive=ack)
            commits += 1
    state = client.get(f"/sessions/{sid}/state").json()
    assert state["tickets"]
    assert all(t["state"] in ("committed", "failed") for t in state["tickets"].values())
