"""Sandboxed interpreter: applies a validated program to a scene.

Statements run in order; the first failing statement halts execution with
prior effects kept (no rollback). Capabilities are re-checked per statement
as defense in depth even though validation already rejects disabled kinds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..core.entity import AssetRef, EntitySpec, Kind
from ..core.scene import SceneGraph
from ..core.vectors import Vec3
from ..errors import EngineError
from .ast import (
    ALL_CAPABILITIES,
    Attach,
    DestroyAll,
    Load,
    Move,
    Physics,
    Place,
    Primitive,
    Program,
    Repeat,
    Scale,
    Span,
    Statement,
    statement_kind,
)
from .validator import scene_bindings

PRIMITIVE_EXTENTS = {
    "cube": Vec3(1.0, 1.0, 1.0),
    "sphere": Vec3(1.0, 1.0, 1.0),
    "cylinder": Vec3(1.0, 1.0, 1.0),
    "plane": Vec3(1.0, 0.0, 1.0),
}


@dataclass
class StatementOutcome:
    kind: str
    status: str  # "ok" | "error"
    error_code: Optional[str] = None
    message: Optional[str] = None
    created: list[int] = field(default_factory=list)
    span: Optional[Span] = None


@dataclass
class ExecutionReport:
    outcomes: list[StatementOutcome] = field(default_factory=list)
    entities_created: list[int] = field(default_factory=list)
    effects: list[str] = field(default_factory=list)
    touched_existing: bool = False
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return all(o.status == "ok" for o in self.outcomes)

    @property
    def failed_outcome(self) -> Optional[StatementOutcome]:
        for o in self.outcomes:
            if o.status == "error":
                return o
        return None


def _flatten(statements: tuple[Statement, ...]) -> Iterator[Statement]:
    for stmt in statements:
        if isinstance(stmt, Repeat):
            for _ in range(stmt.count):
                yield from _flatten(stmt.body)
        else:
            yield stmt


def execute(
    program: Program,
    scene: SceneGraph,
    assets,
    capabilities: frozenset[str] = ALL_CAPABILITIES,
    owner: str = "local",
) -> ExecutionReport:
    t0 = time.perf_counter()
    report = ExecutionReport()
    bindings: dict[str, int] = {}
    for entity in scene.ordered_entities():
        slug = entity.name.lower().replace(" ", "_")
        if slug in scene_bindings(scene):
            bindings[slug] = entity.id
    pre_existing = set(scene.entities)

    def resolve(name: str) -> int:
        eid = bindings.get(name)
        if eid is None or eid not in scene.entities:
            raise EngineError(f"binding {name!r} does not name a live entity")
        return eid

    def spawn(name: str, kind: Kind, extents: Vec3, shape=None, asset=None, vertex_count=0) -> int:
        unique = scene.unique_name(name)
        eid = scene.spawn_entity(
            EntitySpec(
                name=unique,
                kind=kind,
                shape=shape,
                position=Vec3(0.0, extents.y / 2.0, 0.0),
                base_extents=extents,
                asset_ref=asset,
                vertex_count=vertex_count,
            )
        )
        bindings[name] = eid
        bindings[unique] = eid
        return eid

    for stmt in _flatten(program.statements):
        kind = statement_kind(stmt)
        outcome = StatementOutcome(kind=kind, status="ok", span=stmt.span)
        report.outcomes.append(outcome)
        try:
            if kind not in capabilities:
                raise EngineError(f"statement kind {kind!r} is not enabled")
            if isinstance(stmt, Load):
                handle = assets.acquire(stmt.query, scene_vertex_load=scene.vertex_load())
                record = handle.record
                eid = spawn(
                    stmt.binding,
                    Kind.LOADED,
                    Vec3.from_any(record.base_extents),
                    asset=AssetRef(record.id, record.download_url),
                    vertex_count=record.vertex_count,
                )
                outcome.created.append(eid)
                report.entities_created.append(eid)
            elif isinstance(stmt, Primitive):
                eid = spawn(stmt.binding, Kind.PRIMITIVE, PRIMITIVE_EXTENTS[stmt.shape], shape=stmt.shape)
                outcome.created.append(eid)
                report.entities_created.append(eid)
            elif isinstance(stmt, Scale):
                eid = resolve(stmt.binding)
                scene.normalize_scale(eid, stmt.target)
                if eid in pre_existing:
                    report.touched_existing = True
            elif isinstance(stmt, Place):
                eid = resolve(stmt.binding)
                anchor = resolve(stmt.anchor)
                scene.place_next_to(anchor, eid, Vec3(*stmt.direction.as_tuple()))
                if eid in pre_existing:
                    report.touched_existing = True
            elif isinstance(stmt, Move):
                eid = resolve(stmt.binding)
                scene.move_entity(eid, Vec3(*stmt.position.as_tuple()))
                if eid in pre_existing:
                    report.touched_existing = True
            elif isinstance(stmt, Physics):
                eid = resolve(stmt.binding)
                scene.add_physics(eid, stmt.mass)
                if eid in pre_existing:
                    report.touched_existing = True
            elif isinstance(stmt, DestroyAll):
                removed = scene.destroy_loaded()
                bindings_to_drop = [k for k, v in bindings.items() if v not in scene.entities]
                for key in bindings_to_drop:
                    del bindings[key]
                if removed:
                    report.touched_existing = True
            elif isinstance(stmt, Attach):
                eid = resolve(stmt.binding)
                scene.attach_to_joint(eid, stmt.joint, owner=owner)
                if eid in pre_existing:
                    report.touched_existing = True
            else:  # pragma: no cover
                raise EngineError(f"unhandled statement {kind!r}")
            report.effects.append(kind)
        except EngineError as exc:
            outcome.status = "error"
            outcome.error_code = exc.code
            outcome.message = exc.message
            break
    report.wall_time_s = time.perf_counter() - t0
    return report
