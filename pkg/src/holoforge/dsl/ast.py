"""AST node types for the scene-command language.

Nodes are frozen dataclasses; source spans ride along but are excluded from
equality so round-trip tests compare structure only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

BINDING_PATTERN = r"[a-z_][a-z0-9_]{0,31}"
REPEAT_MAX_COUNT = 64
REPEAT_MAX_DEPTH = 4


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int


@dataclass(frozen=True)
class VecLiteral:
    x: float
    y: float
    z: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Load:
    query: str
    binding: str
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Scale:
    binding: str
    target: float
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Place:
    binding: str
    anchor: str
    direction: VecLiteral
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Move:
    binding: str
    position: VecLiteral
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Physics:
    binding: str
    mass: float
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class DestroyAll:
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Primitive:
    shape: str
    binding: str
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Attach:
    binding: str
    joint: str
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Repeat:
    count: int
    body: tuple["Statement", ...]
    span: Optional[Span] = field(default=None, compare=False)


Statement = Union[Load, Scale, Place, Move, Physics, DestroyAll, Primitive, Attach, Repeat]

STATEMENT_KINDS = {
    Load: "load",
    Scale: "scale",
    Place: "place",
    Move: "move",
    Physics: "physics",
    DestroyAll: "destroy_all",
    Primitive: "primitive",
    Attach: "attach",
    Repeat: "repeat",
}

ALL_CAPABILITIES = frozenset(STATEMENT_KINDS.values())


def statement_kind(stmt: Statement) -> str:
    return STATEMENT_KINDS[type(stmt)]


@dataclass(frozen=True)
class Program:
    statements: tuple[Statement, ...]
    source_text: Optional[str] = field(default=None, compare=False)
