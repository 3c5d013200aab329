"""Deterministic scene graph: spawning, normalization, relative placement,
simple kinematics, joint attachment, and canonical hashing.

All iteration is in ascending entity-id order so stepping and hashing are
reproducible bit-for-bit across runs and hosts.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from ..errors import (
    DegenerateExtentsError,
    DuplicateNameError,
    NonpositiveMassError,
    OutOfBoundsError,
    OverlapError,
    UnknownEntityError,
)
from .entity import Entity, EntitySpec, Kind
from .joints import JointSet, require_joint
from .vectors import Vec3

GRAVITY = 9.81
TICK_RATE = 60
POSITION_QUANTUM = 1e-4
SNAPSHOT_VERSION = 1

# Placement retries: nudge by 10% of the base offset, at most 16 times.
NUDGE_FRACTION = 0.1
NUDGE_ATTEMPTS = 16


def quantize(value: float, quantum: float = POSITION_QUANTUM) -> int:
    return int(round(value / quantum))


@dataclass(frozen=True)
class Box:
    min: Vec3
    max: Vec3

    def contains(self, p: Vec3) -> bool:
        return (
            self.min.x <= p.x <= self.max.x
            and self.min.y <= p.y <= self.max.y
            and self.min.z <= p.z <= self.max.z
        )

    def as_tuple(self):
        return (self.min.as_tuple(), self.max.as_tuple())

    @staticmethod
    def from_any(value) -> "Box":
        if isinstance(value, Box):
            return value
        lo, hi = value
        return Box(Vec3.from_any(lo), Vec3.from_any(hi))


HOLODECK_BOUNDS = Box(Vec3(-5.0, 0.0, -5.0), Vec3(5.0, 10.0, 5.0))


@dataclass(frozen=True)
class BoundsEvent:
    entity_id: int
    axis: str  # "x" | "y" | "z"
    side: str  # "min" | "max"


@dataclass(frozen=True)
class CollisionEvent:
    a: int
    b: int


def aabb_overlap(a: tuple[Vec3, Vec3], b: tuple[Vec3, Vec3]) -> bool:
    """Strict overlap: touching faces do not count."""
    amin, amax = a
    bmin, bmax = b
    return (
        amin.x < bmax.x
        and bmin.x < amax.x
        and amin.y < bmax.y
        and bmin.y < amax.y
        and amin.z < bmax.z
        and bmin.z < amax.z
    )


@dataclass
class SceneGraph:
    bounds: Box = HOLODECK_BOUNDS
    entities: dict[int, Entity] = field(default_factory=dict)
    tick: int = 0
    time_scale: float = 1.0
    rng_seed: int = 0
    joints: dict[str, JointSet] = field(default_factory=dict)
    _next_id: int = 1

    # ------------------------------------------------------------------ lookup

    def entity(self, entity_id: int) -> Entity:
        try:
            return self.entities[entity_id]
        except KeyError:
            raise UnknownEntityError(f"no entity with id {entity_id}") from None

    def find_by_name(self, name: str) -> Optional[Entity]:
        for eid in sorted(self.entities):
            if self.entities[eid].name == name:
                return self.entities[eid]
        return None

    def ordered_entities(self) -> list[Entity]:
        return [self.entities[eid] for eid in sorted(self.entities)]

    def vertex_load(self) -> int:
        return sum(e.vertex_count for e in self.entities.values() if e.kind is Kind.LOADED)

    # ------------------------------------------------------------------ spawn

    def spawn_entity(self, spec: EntitySpec, strict: bool = False) -> int:
        if spec.kind is not Kind.JOINT_ANCHOR and spec.base_extents.max_component() <= 0.0:
            raise DegenerateExtentsError(f"entity {spec.name!r} needs nonzero base extents")
        if spec.scale <= 0.0:
            raise ValueError("scale must be positive")
        if strict and self.find_by_name(spec.name) is not None:
            raise DuplicateNameError(f"entity named {spec.name!r} already exists")
        if not self.bounds.contains(spec.position):
            raise OutOfBoundsError(
                f"spawn position {spec.position.as_tuple()} outside scene bounds"
            )
        if spec.entity_id is not None:
            eid = spec.entity_id
            self._next_id = max(self._next_id, eid + 1)
        else:
            eid = self._next_id
            self._next_id += 1
        self.entities[eid] = Entity(
            id=eid,
            name=spec.name,
            kind=spec.kind,
            position=spec.position,
            rotation=spec.rotation,
            scale=spec.scale,
            base_extents=spec.base_extents,
            velocity=spec.velocity,
            mass=spec.mass,
            parent=spec.parent,
            shape=spec.shape,
            asset_ref=spec.asset_ref,
            vertex_count=spec.vertex_count,
        )
        return eid

    def remove_entity(self, entity_id: int) -> None:
        self.entities.pop(entity_id, None)

    def unique_name(self, base: str) -> str:
        """Resolve label collisions with _1, _2... suffixes."""
        if self.find_by_name(base) is None:
            return base
        n = 1
        while self.find_by_name(f"{base}_{n}") is not None:
            n += 1
        return f"{base}_{n}"

    # ----------------------------------------------------------- transformations

    def normalize_scale(self, entity_id: int, target_max_extent: float) -> float:
        entity = self.entity(entity_id)
        max_base = entity.base_extents.max_component()
        if max_base <= 0.0:
            raise DegenerateExtentsError(f"entity {entity.name!r} has degenerate extents")
        if target_max_extent <= 0.0:
            raise ValueError("target extent must be positive")
        old = entity.scale
        entity.scale = target_max_extent / max_base
        return entity.scale / old

    def place_next_to(self, anchor_id: int, entity_id: int, direction: Vec3) -> Vec3:
        if anchor_id == entity_id:
            raise ValueError("cannot place an entity next to itself")
        anchor = self.entity(anchor_id)
        entity = self.entity(entity_id)
        half_sum = anchor.half_extents() + entity.half_extents()
        offset = direction.hadamard(half_sum)
        candidate = anchor.position + offset
        if not self.bounds.contains(candidate):
            raise OutOfBoundsError(
                f"placement {candidate.as_tuple()} outside scene bounds"
            )
        nudge = offset.scaled(NUDGE_FRACTION)
        for _ in range(NUDGE_ATTEMPTS + 1):
            if not self.bounds.contains(candidate):
                break
            if not self._overlaps_any(entity, candidate):
                entity.position = candidate
                return candidate
            candidate = candidate + nudge
        raise OverlapError(
            f"no admissible placement for {entity.name!r} next to {anchor.name!r}"
        )

    def _overlaps_any(self, entity: Entity, at: Vec3) -> bool:
        h = entity.half_extents()
        box = (at - h, at + h)
        for other in self.ordered_entities():
            if other.id == entity.id:
                continue
            if other.kind in (Kind.STRUCTURAL, Kind.JOINT_ANCHOR):
                continue
            if aabb_overlap(box, other.aabb()):
                return True
        return False

    def move_entity(self, entity_id: int, position: Vec3) -> None:
        if not self.bounds.contains(position):
            raise OutOfBoundsError(f"move target {position.as_tuple()} outside scene bounds")
        self.entity(entity_id).position = position

    def add_physics(self, entity_id: int, mass: float) -> Entity:
        if mass <= 0.0:
            raise NonpositiveMassError(f"mass must be positive, got {mass}")
        entity = self.entity(entity_id)
        entity.mass = mass
        return entity

    # ------------------------------------------------------------------ joints

    def joint_set(self, owner: str) -> JointSet:
        if owner not in self.joints:
            self.joints[owner] = JointSet(owner)
        return self.joints[owner]

    def joint_anchor(self, owner: str, joint: str) -> int:
        """Get or lazily create the anchor entity for one owner's joint."""
        require_joint(joint)
        name = f"{owner}:{joint}"
        existing = self.find_by_name(name)
        if existing is not None and existing.kind is Kind.JOINT_ANCHOR:
            return existing.id
        pose = self.joint_set(owner).pose(joint)
        return self.spawn_entity(
            EntitySpec(
                name=name,
                kind=Kind.JOINT_ANCHOR,
                position=pose.position,
                rotation=pose.rotation,
                base_extents=Vec3(0.0, 0.0, 0.0),
            )
        )

    def attach_to_joint(self, entity_id: int, joint: str, owner: str = "local") -> Entity:
        require_joint(joint)
        entity = self.entity(entity_id)
        joint_id = f"{owner}:{joint}"
        self.joint_anchor(owner, joint)
        # Paddle-swap semantics: only one entity per joint.
        for other in self.ordered_entities():
            if other.id != entity_id and other.parent == joint_id:
                other.parent = None
        entity.parent = joint_id
        anchor = self.find_by_name(joint_id)
        entity.position = anchor.position
        entity.rotation = anchor.rotation
        return entity

    # ------------------------------------------------------------------ destroy

    def destroy_loaded(self) -> int:
        doomed = [
            eid
            for eid in sorted(self.entities)
            if self.entities[eid].kind in (Kind.LOADED, Kind.PRIMITIVE)
        ]
        for eid in doomed:
            del self.entities[eid]
        return len(doomed)

    # ------------------------------------------------------------------ step

    def step(self, dt: float) -> list[Any]:
        if dt <= 0.0:
            raise ValueError("dt must be positive")
        dt_eff = dt * self.time_scale
        events: list[Any] = []

        # Anchors follow their externally written joint poses.
        for entity in self.ordered_entities():
            if entity.kind is Kind.JOINT_ANCHOR and ":" in entity.name:
                owner, joint = entity.name.split(":", 1)
                if owner in self.joints and joint in self.joints[owner].poses:
                    pose = self.joints[owner].poses[joint]
                    entity.position = pose.position
                    entity.rotation = pose.rotation

        for entity in self.ordered_entities():
            if entity.kind in (Kind.STRUCTURAL, Kind.JOINT_ANCHOR):
                continue
            if entity.parent is not None:
                anchor = self.find_by_name(entity.parent)
                if anchor is not None:
                    entity.position = anchor.position
                    entity.rotation = anchor.rotation
                continue
            if entity.physics_enabled:
                entity.velocity = Vec3(
                    entity.velocity.x,
                    entity.velocity.y - GRAVITY * dt_eff,
                    entity.velocity.z,
                )
            if entity.velocity != Vec3(0.0, 0.0, 0.0):
                entity.position = entity.position + entity.velocity.scaled(dt_eff)
                events.extend(self._reflect_at_bounds(entity))

        events.extend(self._collision_events())
        self.tick += 1
        return events

    def _reflect_at_bounds(self, entity: Entity) -> list[BoundsEvent]:
        events: list[BoundsEvent] = []
        h = entity.half_extents()
        pos = list(entity.position.as_tuple())
        vel = list(entity.velocity.as_tuple())
        for i, axis in enumerate("xyz"):
            lo = self.bounds.min.as_tuple()[i] + h.as_tuple()[i]
            hi = self.bounds.max.as_tuple()[i] - h.as_tuple()[i]
            if pos[i] < lo and vel[i] < 0.0:
                pos[i] = 2.0 * lo - pos[i]
                vel[i] = -vel[i]
                events.append(BoundsEvent(entity.id, axis, "min"))
            elif pos[i] > hi and vel[i] > 0.0:
                pos[i] = 2.0 * hi - pos[i]
                vel[i] = -vel[i]
                events.append(BoundsEvent(entity.id, axis, "max"))
        entity.position = Vec3(*pos)
        entity.velocity = Vec3(*vel)
        return events

    def _collision_events(self) -> list[CollisionEvent]:
        movable = [
            e
            for e in self.ordered_entities()
            if e.kind not in (Kind.STRUCTURAL, Kind.JOINT_ANCHOR)
        ]
        events = []
        for i, a in enumerate(movable):
            for b in movable[i + 1 :]:
                if aabb_overlap(a.aabb(), b.aabb()):
                    events.append(CollisionEvent(a.id, b.id))
        return events

    # ------------------------------------------------------------- serialization

    def entity_records(self) -> list[dict[str, Any]]:
        """Canonical id-ordered records with quantized positions."""
        records = []
        for entity in self.ordered_entities():
            rec = entity.to_record()
            rec["position"] = [quantize(c) for c in entity.position.as_tuple()]
            records.append(rec)
        return records

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.entity_records(), sort_keys=True, separators=(",", ":")).encode()

    def scene_hash(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()

    def to_snapshot(self) -> dict[str, Any]:
        return {
            "version": SNAPSHOT_VERSION,
            "bounds": self.bounds.as_tuple(),
            "tick": self.tick,
            "time_scale": self.time_scale,
            "rng_seed": self.rng_seed,
            "next_id": self._next_id,
            "entities": self.entity_records(),
        }

    @staticmethod
    def from_snapshot(snapshot: dict[str, Any]) -> "SceneGraph":
        if snapshot.get("version") != SNAPSHOT_VERSION:
            raise ValueError(f"unsupported snapshot version {snapshot.get('version')!r}")
        scene = SceneGraph(
            bounds=Box.from_any(snapshot["bounds"]),
            tick=int(snapshot["tick"]),
            time_scale=float(snapshot["time_scale"]),
            rng_seed=int(snapshot.get("rng_seed", 0)),
        )
        scene._next_id = int(snapshot["next_id"])
        for rec in snapshot["entities"]:
            rec = dict(rec)
            rec["position"] = [c * POSITION_QUANTUM for c in rec["position"]]
            entity = Entity.from_record(rec)
            scene.entities[entity.id] = entity
        return scene


def iter_kinds(entities: Iterable[Entity]) -> dict[Kind, int]:
    counts: dict[Kind, int] = {}
    for e in entities:
        counts[e.kind] = counts.get(e.kind, 0) + 1
    return counts
