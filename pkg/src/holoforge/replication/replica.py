"""Client-side replica: sequence-buffered, idempotent message application.

Ordered kinds (spawn commits, time scale, announcements, UI events) apply
strictly in per-client sequence order; directives, state-hash queries and
snapshots act immediately on receipt so barrier acks and audits never stall
behind a gap. Snapshots replace the scene wholesale and fast-forward the
ordered watermark.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional

from ..core.entity import Entity
from ..core.scene import SceneGraph
from .messages import (
    AssetDirective,
    AssetReady,
    Envelope,
    EventNotice,
    ORDERED_KINDS,
    ResolutionAnnounce,
    Snapshot,
    SpawnCommit,
    StateHash,
    StateHashReport,
    TimeScale,
)

logger = logging.getLogger(__name__)


@dataclass
class Replica:
    session_id: str
    client_id: str
    scene: SceneGraph = field(default_factory=SceneGraph)
    last_seq: int = 0
    buffer: dict[int, Envelope] = field(default_factory=dict)
    seen_immediate: set[int] = field(default_factory=set)
    time_scale: float = 1.0
    last_announce: Optional[ResolutionAnnounce] = None
    events: list[EventNotice] = field(default_factory=list)

    def digest(self) -> str:
        return self.scene.scene_hash()

    def apply(self, envelope: Envelope) -> list[Any]:
        """Apply one envelope; returns client actions (acks, reports) to send."""
        if envelope.kind in ORDERED_KINDS:
            if envelope.seq is None or envelope.seq <= self.last_seq:
                return []  # stale duplicate
            self.buffer[envelope.seq] = envelope
            self._drain()
            return []
        if envelope.seq is not None:
            if envelope.seq in self.seen_immediate or envelope.seq <= self.last_seq:
                return []
            self.seen_immediate.add(envelope.seq)
        actions = self._handle_immediate(envelope)
        self._drain()
        return actions

    def _drain(self) -> None:
        while True:
            nxt = self.last_seq + 1
            if nxt in self.buffer:
                self._apply_ordered(self.buffer.pop(nxt))
                self.last_seq = nxt
            elif nxt in self.seen_immediate:
                self.seen_immediate.discard(nxt)
                self.last_seq = nxt
            else:
                break

    def _apply_ordered(self, envelope: Envelope) -> None:
        message = envelope.message
        if isinstance(message, SpawnCommit):
            entity = Entity.from_record(message.spec)
            self.scene.entities[entity.id] = entity
            self.scene._next_id = max(self.scene._next_id, entity.id + 1)
        elif isinstance(message, TimeScale):
            self.time_scale = message.factor
            self.scene.time_scale = message.factor
        elif isinstance(message, ResolutionAnnounce):
            self.last_announce = message
        elif isinstance(message, EventNotice):
            self.events.append(message)
        else:  # pragma: no cover
            logger.warning("unknown ordered message kind %r ignored", envelope.kind)

    def _handle_immediate(self, envelope: Envelope) -> list[Any]:
        message = envelope.message
        if isinstance(message, AssetDirective):
            return [AssetReady(client=self.client_id, asset_id=message.asset_id)]
        if isinstance(message, StateHash):
            return [
                StateHashReport(client=self.client_id, tick=message.tick, digest=self.digest())
            ]
        if isinstance(message, Snapshot):
            self.scene = SceneGraph.from_snapshot(message.scene)
            self.time_scale = self.scene.time_scale
            if envelope.seq is not None and envelope.seq > self.last_seq:
                self.last_seq = envelope.seq
            self.buffer = {s: e for s, e in self.buffer.items() if s > self.last_seq}
            self.seen_immediate = {s for s in self.seen_immediate if s > self.last_seq}
            return []
        logger.warning("unknown message kind %r ignored", envelope.kind)
        return []
