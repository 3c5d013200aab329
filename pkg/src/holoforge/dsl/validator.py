"""Static validation: binding resolution, literal bounds, capability
whitelist, repeat limits, joint vocabulary."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..core.joints import JOINT_SET
from ..core.scene import SceneGraph
from ..core.vectors import Vec3
from .ast import (
    ALL_CAPABILITIES,
    Attach,
    Load,
    Move,
    Place,
    Physics,
    Primitive,
    Program,
    Repeat,
    REPEAT_MAX_COUNT,
    REPEAT_MAX_DEPTH,
    Scale,
    Span,
    Statement,
    statement_kind,
)

_BINDING_SHAPED = re.compile(r"^[a-z_][a-z0-9_]{0,31}$")


@dataclass(frozen=True)
class Diagnostic:
    code: str  # UNBOUND | BOUNDS | CAPABILITY | REPEAT | UNKNOWN_JOINT | VALUE
    message: str
    span: Optional[Span] = None


def scene_bindings(scene: SceneGraph) -> set[str]:
    """Entity names exposed to programs, snake_cased where representable."""
    names = set()
    for entity in scene.entities.values():
        slug = entity.name.lower().replace(" ", "_")
        if _BINDING_SHAPED.match(slug):
            names.add(slug)
    return names


def validate(
    program: Program,
    scene: SceneGraph,
    capabilities: frozenset[str] = ALL_CAPABILITIES,
) -> list[Diagnostic]:
    diagnostics: list[Diagnostic] = []
    env = scene_bindings(scene)

    def check(statements: tuple[Statement, ...], depth: int) -> None:
        for stmt in statements:
            kind = statement_kind(stmt)
            if kind not in capabilities:
                diagnostics.append(
                    Diagnostic("CAPABILITY", f"statement kind {kind!r} is not enabled", stmt.span)
                )
            if isinstance(stmt, (Load, Primitive)):
                if isinstance(stmt, Load) and not stmt.query.strip():
                    diagnostics.append(
                        Diagnostic("VALUE", "empty asset query", stmt.span)
                    )
                env.add(stmt.binding)
            elif isinstance(stmt, Scale):
                _require_bound(stmt.binding, stmt.span)
                if stmt.target <= 0.0:
                    diagnostics.append(
                        Diagnostic("VALUE", f"scale target must be positive, got {stmt.target}", stmt.span)
                    )
            elif isinstance(stmt, Place):
                _require_bound(stmt.binding, stmt.span)
                _require_bound(stmt.anchor, stmt.span)
            elif isinstance(stmt, Move):
                _require_bound(stmt.binding, stmt.span)
                target = Vec3(*stmt.position.as_tuple())
                if not scene.bounds.contains(target):
                    diagnostics.append(
                        Diagnostic(
                            "BOUNDS",
                            f"move target {stmt.position.as_tuple()} is outside scene bounds",
                            stmt.span,
                        )
                    )
            elif isinstance(stmt, Physics):
                _require_bound(stmt.binding, stmt.span)
                if stmt.mass <= 0.0:
                    diagnostics.append(
                        Diagnostic("VALUE", f"mass must be positive, got {stmt.mass}", stmt.span)
                    )
            elif isinstance(stmt, Attach):
                _require_bound(stmt.binding, stmt.span)
                if stmt.joint not in JOINT_SET:
                    diagnostics.append(
                        Diagnostic("UNKNOWN_JOINT", f"unknown joint {stmt.joint!r}", stmt.span)
                    )
            elif isinstance(stmt, Repeat):
                if not 1 <= stmt.count <= REPEAT_MAX_COUNT:
                    diagnostics.append(
                        Diagnostic(
                            "REPEAT",
                            f"repeat count {stmt.count} outside [1, {REPEAT_MAX_COUNT}]",
                            stmt.span,
                        )
                    )
                if depth + 1 > REPEAT_MAX_DEPTH:
                    diagnostics.append(
                        Diagnostic(
                            "REPEAT",
                            f"repeat nesting deeper than {REPEAT_MAX_DEPTH}",
                            stmt.span,
                        )
                    )
                check(stmt.body, depth + 1)

    def _require_bound(name: str, span: Optional[Span]) -> None:
        if name not in env:
            diagnostics.append(Diagnostic("UNBOUND", f"unbound identifier {name!r}", span))

    check(program.statements, 0)
    return diagnostics
