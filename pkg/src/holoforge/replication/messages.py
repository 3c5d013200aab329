"""Replication wire messages.

Server messages are stamped with a per-recipient monotone sequence number at
emission (an Envelope); client messages carry no sequence. The wire format is
length-prefixed JSON: ``<decimal byte length>:<json>`` so stream transports
and trace files share one framing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from typing import Any, ClassVar, Optional, Type

WIRE_VERSION = 1

# ---------------------------------------------------------------- server -> client


@dataclass(frozen=True)
class ResolutionAnnounce:
    kind: ClassVar[str] = "resolution_announce"
    ball: str
    paddle: str
    output: str
    ticket: str


@dataclass(frozen=True)
class AssetDirective:
    kind: ClassVar[str] = "asset_directive"
    asset_id: str
    download_url: str
    ticket: str


@dataclass(frozen=True)
class SpawnCommit:
    kind: ClassVar[str] = "spawn_commit"
    spec: dict  # canonical entity record, exact float positions
    ticket: str = ""


@dataclass(frozen=True)
class TimeScale:
    kind: ClassVar[str] = "time_scale"
    factor: float


@dataclass(frozen=True)
class StateHash:
    kind: ClassVar[str] = "state_hash"
    tick: int
    digest: str


@dataclass(frozen=True)
class Snapshot:
    kind: ClassVar[str] = "snapshot"
    scene: dict
    tick: int


@dataclass(frozen=True)
class EventNotice:
    """UI affordances (ticket chips, code panel, match events); replicas
    treat these as no-ops for scene state."""

    kind: ClassVar[str] = "event"
    event: str
    data: dict = field(default_factory=dict)


# ---------------------------------------------------------------- client -> server


@dataclass(frozen=True)
class CommandRequest:
    kind: ClassVar[str] = "command_request"
    client: str
    text: str
    request_id: str = ""


@dataclass(frozen=True)
class AssetReady:
    kind: ClassVar[str] = "asset_ready"
    client: str
    asset_id: str


@dataclass(frozen=True)
class StateHashReport:
    kind: ClassVar[str] = "state_hash_report"
    client: str
    tick: int
    digest: str


MESSAGE_TYPES: dict[str, Type] = {
    cls.kind: cls
    for cls in (
        ResolutionAnnounce,
        AssetDirective,
        SpawnCommit,
        TimeScale,
        StateHash,
        Snapshot,
        EventNotice,
        CommandRequest,
        AssetReady,
        StateHashReport,
    )
}

# Kinds a replica must apply strictly in sequence order; the rest are acted
# on immediately at receipt (acks and audits must not stall behind a gap).
ORDERED_KINDS = frozenset({"spawn_commit", "time_scale", "resolution_announce", "event"})


@dataclass(frozen=True)
class Envelope:
    session: str
    seq: Optional[int]
    to_client: Optional[str]
    message: Any

    @property
    def kind(self) -> str:
        return self.message.kind

    def to_wire(self) -> dict:
        payload = {f.name: getattr(self.message, f.name) for f in fields(self.message)}
        return {"v": WIRE_VERSION, "session": self.session, "seq": self.seq,
                "kind": self.message.kind, **payload}


def message_from_wire(data: dict) -> Optional[Any]:
    cls = MESSAGE_TYPES.get(data.get("kind", ""))
    if cls is None:
        return None
    kwargs = {f.name: data[f.name] for f in fields(cls) if f.name in data}
    return cls(**kwargs)


def envelope_from_wire(data: dict, to_client: Optional[str] = None) -> Optional[Envelope]:
    if data.get("v") != WIRE_VERSION:
        return None
    message = message_from_wire(data)
    if message is None:
        return None
    return Envelope(session=data.get("session", ""), seq=data.get("seq"),
                    to_client=to_client, message=message)


# ---------------------------------------------------------------- framing


def encode_frame(data: dict) -> bytes:
    body = json.dumps(data, sort_keys=True, separators=(",", ":")).encode()
    return str(len(body)).encode() + b":" + body


def decode_frames(buffer: bytes) -> tuple[list[dict], bytes]:
    """Decode all complete frames from a byte stream; returns (frames, rest)."""
    frames: list[dict] = []
    while True:
        sep = buffer.find(b":")
        if sep < 0:
            break
        length = int(buffer[:sep])
        end = sep + 1 + length
        if len(buffer) < end:
            break
        frames.append(json.loads(buffer[sep + 1 : end].decode()))
        buffer = buffer[end:]
    return frames, buffer
