"""Entity records and the wire-level entity spec."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from .vectors import IDENTITY, Quat, Vec3


class Kind(str, Enum):
    LOADED = "loaded-asset"
    PRIMITIVE = "primitive"
    STRUCTURAL = "structural"
    JOINT_ANCHOR = "joint-anchor"


PRIMITIVE_SHAPES = ("cube", "sphere", "cylinder", "plane")


@dataclass
class AssetRef:
    asset_id: str
    download_url: str


@dataclass
class Entity:
    id: int
    name: str
    kind: Kind
    position: Vec3 = Vec3()
    rotation: Quat = IDENTITY
    scale: float = 1.0
    base_extents: Vec3 = Vec3(1.0, 1.0, 1.0)
    velocity: Vec3 = Vec3()
    mass: Optional[float] = None
    parent: Optional[str] = None  # joint id "owner:joint" when attached
    shape: Optional[str] = None  # primitive/structural shape hint
    asset_ref: Optional[AssetRef] = None
    vertex_count: int = 0

    @property
    def physics_enabled(self) -> bool:
        return self.mass is not None

    def extents(self) -> Vec3:
        """Effective axis-aligned extents at the current scale."""
        return self.base_extents.scaled(self.scale)

    def half_extents(self) -> Vec3:
        return self.base_extents.scaled(self.scale * 0.5)

    def aabb(self) -> tuple[Vec3, Vec3]:
        h = self.half_extents()
        return (self.position - h, self.position + h)

    def to_record(self) -> dict[str, Any]:
        """Canonical serializable record; position quantized by the caller."""
        rec: dict[str, Any] = {
            "id": self.id,
            "name": self.name,
            "kind": self.kind.value,
            "position": self.position.as_tuple(),
            "rotation": self.rotation.as_tuple(),
            "scale": self.scale,
            "base_extents": self.base_extents.as_tuple(),
            "velocity": self.velocity.as_tuple(),
            "mass": self.mass,
            "parent": self.parent,
            "shape": self.shape,
            "asset": None,
            "vertex_count": self.vertex_count,
        }
        if self.asset_ref is not None:
            rec["asset"] = {"id": self.asset_ref.asset_id, "url": self.asset_ref.download_url}
        return rec

    @staticmethod
    def from_record(rec: dict[str, Any]) -> "Entity":
        asset = rec.get("asset")
        return Entity(
            id=int(rec["id"]),
            name=rec["name"],
            kind=Kind(rec["kind"]),
            position=Vec3.from_any(rec["position"]),
            rotation=Quat.from_any(rec["rotation"]),
            scale=float(rec["scale"]),
            base_extents=Vec3.from_any(rec["base_extents"]),
            velocity=Vec3.from_any(rec["velocity"]),
            mass=rec.get("mass"),
            parent=rec.get("parent"),
            shape=rec.get("shape"),
            asset_ref=AssetRef(asset["id"], asset["url"]) if asset else None,
            vertex_count=int(rec.get("vertex_count") or 0),
        )


@dataclass
class EntitySpec:
    """Description used both to spawn entities and as the SpawnCommit payload."""

    name: str
    kind: Kind
    position: Vec3 = Vec3()
    rotation: Quat = IDENTITY
    scale: float = 1.0
    base_extents: Vec3 = Vec3(1.0, 1.0, 1.0)
    velocity: Vec3 = Vec3()
    mass: Optional[float] = None
    parent: Optional[str] = None
    shape: Optional[str] = None
    asset_ref: Optional[AssetRef] = None
    vertex_count: int = 0
    entity_id: Optional[int] = None  # fixed id for replicated upserts

    def to_payload(self) -> dict[str, Any]:
        entity = Entity(
            id=self.entity_id if self.entity_id is not None else -1,
            name=self.name,
            kind=self.kind,
            position=self.position,
            rotation=self.rotation,
            scale=self.scale,
            base_extents=self.base_extents,
            velocity=self.velocity,
            mass=self.mass,
            parent=self.parent,
            shape=self.shape,
            asset_ref=self.asset_ref,
            vertex_count=self.vertex_count,
        )
        return entity.to_record()

    @staticmethod
    def from_payload(rec: dict[str, Any]) -> "EntitySpec":
        entity = Entity.from_record(rec)
        return EntitySpec(
            name=entity.name,
            kind=entity.kind,
            position=entity.position,
            rotation=entity.rotation,
            scale=entity.scale,
            base_extents=entity.base_extents,
            velocity=entity.velocity,
            mass=entity.mass,
            parent=entity.parent,
            shape=entity.shape,
            asset_ref=entity.asset_ref,
            vertex_count=entity.vertex_count,
            entity_id=entity.id if entity.id >= 0 else None,
        )
