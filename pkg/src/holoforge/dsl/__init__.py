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
    REPEAT_MAX_COUNT,
    REPEAT_MAX_DEPTH,
    Scale,
    Span,
    Statement,
    VecLiteral,
    statement_kind,
)
from .formatter import format_program
from .interpreter import ExecutionReport, StatementOutcome, execute
from .parser import ParseError, parse
from .validator import Diagnostic, scene_bindings, validate

__all__ = [
    "ALL_CAPABILITIES",
    "Attach",
    "DestroyAll",
    "Load",
    "Move",
    "Physics",
    "Place",
    "Primitive",
    "Program",
    "Repeat",
    "REPEAT_MAX_COUNT",
    "REPEAT_MAX_DEPTH",
    "Scale",
    "Span",
    "Statement",
    "VecLiteral",
    "statement_kind",
    "format_program",
    "ExecutionReport",
    "StatementOutcome",
    "execute",
    "ParseError",
    "parse",
    "Diagnostic",
    "scene_bindings",
    "validate",
]
