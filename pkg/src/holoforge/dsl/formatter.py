"""Canonical pretty-printer: LF line endings, two-space indent, shortest
round-trip float formatting. parse(format(p)) is structurally equal to p and
format is a fixed point on its own output."""

from __future__ import annotations

import json

from .ast import (
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
    Statement,
    VecLiteral,
)


def format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def format_vec(v: VecLiteral) -> str:
    return f"({format_number(v.x)}, {format_number(v.y)}, {format_number(v.z)})"


def _format_statement(stmt: Statement, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    if isinstance(stmt, Load):
        out.append(f'{pad}load {json.dumps(stmt.query)} as {stmt.binding}')
    elif isinstance(stmt, Scale):
        out.append(f"{pad}scale {stmt.binding} to {format_number(stmt.target)}")
    elif isinstance(stmt, Place):
        out.append(
            f"{pad}place {stmt.binding} next_to {stmt.anchor} dir {format_vec(stmt.direction)}"
        )
    elif isinstance(stmt, Move):
        out.append(f"{pad}move {stmt.binding} to {format_vec(stmt.position)}")
    elif isinstance(stmt, Physics):
        out.append(f"{pad}physics {stmt.binding} mass {format_number(stmt.mass)}")
    elif isinstance(stmt, DestroyAll):
        out.append(f"{pad}destroy_all")
    elif isinstance(stmt, Primitive):
        out.append(f"{pad}primitive {stmt.shape} as {stmt.binding}")
    elif isinstance(stmt, Attach):
        out.append(f"{pad}attach {stmt.binding} to {stmt.joint}")
    elif isinstance(stmt, Repeat):
        out.append(f"{pad}repeat {stmt.count} {{")
        for inner in stmt.body:
            _format_statement(inner, depth + 1, out)
        out.append(f"{pad}}}")
    else:  # pragma: no cover
        raise TypeError(f"unknown statement type {type(stmt)!r}")


def format_program(program: Program) -> str:
    lines: list[str] = []
    for stmt in program.statements:
        _format_statement(stmt, 0, lines)
    return "\n".join(lines) + ("\n" if lines else "")
