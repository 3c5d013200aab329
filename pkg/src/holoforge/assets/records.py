"""Asset repository records, fetch handles, and vertex budgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

DEFAULT_MAX_SCENE_VERTICES = 500_000
DEFAULT_MAX_SINGLE_ASSET_VERTICES = 100_000


@dataclass(frozen=True)
class AssetRecord:
    id: str
    name: str
    tags: frozenset[str]
    likes: int
    vertex_count: int
    size_bytes: int
    download_url: str
    base_extents: tuple[float, float, float]

    @staticmethod
    def from_dict(data: dict) -> "AssetRecord":
        return AssetRecord(
            id=data["id"],
            name=data["name"],
            tags=frozenset(data["tags"]),
            likes=int(data["likes"]),
            vertex_count=int(data["vertex_count"]),
            size_bytes=int(data["size_bytes"]),
            download_url=data["download_url"],
            base_extents=tuple(float(c) for c in data["base_extents"]),
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "tags": sorted(self.tags),
            "likes": self.likes,
            "vertex_count": self.vertex_count,
            "size_bytes": self.size_bytes,
            "download_url": self.download_url,
            "base_extents": list(self.base_extents),
        }


@dataclass
class AssetHandle:
    record: AssetRecord
    cache_path: str
    fetch_latency_ms: float
    normalized: bool = True


@dataclass(frozen=True)
class Budget:
    max_scene_vertices: int = DEFAULT_MAX_SCENE_VERTICES
    max_single_asset_vertices: int = DEFAULT_MAX_SINGLE_ASSET_VERTICES

    def __post_init__(self):
        if self.max_single_asset_vertices > self.max_scene_vertices:
            raise ValueError("per-asset budget cannot exceed the scene budget")


@dataclass(frozen=True)
class BudgetDecision:
    admitted: bool
    reason: Optional[str] = None  # "single_asset_cap" | "scene_cap"
    message: str = ""


def check_budget(scene_vertex_load: int, record: AssetRecord, budget: Budget) -> BudgetDecision:
    if record.vertex_count > budget.max_single_asset_vertices:
        return BudgetDecision(
            False,
            "single_asset_cap",
            f"asset {record.id} has {record.vertex_count} vertices, over the "
            f"per-asset cap of {budget.max_single_asset_vertices}",
        )
    if scene_vertex_load + record.vertex_count > budget.max_scene_vertices:
        return BudgetDecision(
            False,
            "scene_cap",
            f"asset {record.id} would raise the scene to "
            f"{scene_vertex_load + record.vertex_count} vertices, over the cap of "
            f"{budget.max_scene_vertices}; other objects must be removed from the scene",
        )
    return BudgetDecision(True)
