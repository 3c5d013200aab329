"""Tokenizer and recursive-descent parser for the scene-command language.

Grammar (EBNF):

    program    = { statement } ;
    statement  = load | scale | place | move | physics
               | destroy | primitive | attach | repeat ;
    load       = "load" STRING "as" BINDING ;
    scale      = "scale" BINDING "to" NUMBER ;
    place      = "place" BINDING "next_to" IDENT "dir" vec3 ;
    move       = "move" BINDING "to" vec3 ;
    physics    = "physics" BINDING "mass" NUMBER ;
    destroy    = "destroy_all" ;
    primitive  = "primitive" SHAPE "as" BINDING ;
    attach     = "attach" BINDING "to" IDENT ;
    repeat     = "repeat" INT "{" { statement } "}" ;
    vec3       = "(" NUMBER "," NUMBER "," NUMBER ")" ;
    SHAPE      = "cube" | "sphere" | "cylinder" | "plane" ;
    BINDING    = /[a-z_][a-z0-9_]{0,31}/ , not a keyword ;
    IDENT      = /[A-Za-z_][A-Za-z0-9_]*/ ;  (joint names keep their case)
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

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
    Span,
    Statement,
    VecLiteral,
)

KEYWORDS = frozenset(
    {
        "load",
        "scale",
        "place",
        "move",
        "physics",
        "destroy_all",
        "primitive",
        "attach",
        "repeat",
        "as",
        "to",
        "next_to",
        "dir",
        "mass",
        "cube",
        "sphere",
        "cylinder",
        "plane",
    }
)

SHAPES = ("cube", "sphere", "cylinder", "plane")

BINDING_RE = re.compile(r"^[a-z_][a-z0-9_]{0,31}$")
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
NUMBER_RE = re.compile(r"-?(\d+\.\d+([eE][+-]?\d+)?|\d+([eE][+-]?\d+)?|\.\d+)")
INT_RE = re.compile(r"^\d+$")


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: Optional[str] = None):
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{line}:{col}: {message}{hint}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected


@dataclass(frozen=True)
class Token:
    type: str  # IDENT NUMBER STRING LBRACE RBRACE LPAREN RPAREN COMMA EOF
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":  # comment to end of line
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "{}(),":
            kind = {"{": "LBRACE", "}": "RBRACE", "(": "LPAREN", ")": "RPAREN", ",": "COMMA"}[ch]
            tokens.append(Token(kind, ch, line, col))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text[j] == '"':
                    break
                if text[j] == "\n":
                    raise ParseError("unterminated string", line, col)
                j += 1
            if j >= n:
                raise ParseError("unterminated string", line, col)
            raw = text[i : j + 1]
            try:
                value = json.loads(raw)
            except json.JSONDecodeError:
                raise ParseError("invalid string literal", line, col) from None
            tokens.append(Token("STRING", value, line, col))
            col += j + 1 - i
            i = j + 1
            continue
        m = NUMBER_RE.match(text, i)
        if m and (ch.isdigit() or ch in "-."):
            tokens.append(Token("NUMBER", m.group(0), line, col))
            col += len(m.group(0))
            i = m.end()
            continue
        m = IDENT_RE.match(text, i)
        if m:
            tokens.append(Token("IDENT", m.group(0), line, col))
            col += len(m.group(0))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "EOF":
            self.pos += 1
        return tok

    def error(self, message: str, expected: Optional[str] = None) -> ParseError:
        tok = self.peek()
        where = "end of input" if tok.type == "EOF" else repr(tok.value)
        return ParseError(f"{message} at {where}", tok.line, tok.col, expected)

    def expect(self, token_type: str, expected: str) -> Token:
        tok = self.peek()
        if tok.type != token_type:
            raise self.error("unexpected token", expected)
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.type != "IDENT" or tok.value != word:
            raise self.error("unexpected token", f"'{word}'")
        return self.advance()

    def binding(self) -> str:
        tok = self.expect("IDENT", "binding identifier")
        if tok.value in KEYWORDS or not BINDING_RE.match(tok.value):
            raise ParseError(
                f"invalid binding {tok.value!r}", tok.line, tok.col, "lowercase identifier"
            )
        return tok.value

    def ident(self) -> str:
        return self.expect("IDENT", "identifier").value

    def number(self) -> float:
        tok = self.expect("NUMBER", "number")
        return float(tok.value)

    def integer(self) -> int:
        tok = self.expect("NUMBER", "integer")
        if not INT_RE.match(tok.value):
            raise ParseError(f"expected integer, got {tok.value!r}", tok.line, tok.col)
        return int(tok.value)

    def vec3(self) -> VecLiteral:
        self.expect("LPAREN", "'('")
        x = self.number()
        self.expect("COMMA", "','")
        y = self.number()
        self.expect("COMMA", "','")
        z = self.number()
        self.expect("RPAREN", "')'")
        return VecLiteral(x, y, z)

    def statement(self) -> Statement:
        tok = self.peek()
        if tok.type != "IDENT":
            raise self.error("expected statement", "statement keyword")
        start = tok
        word = tok.value
        if word == "load":
            self.advance()
            query = self.expect("STRING", "quoted asset query").value
            self.expect_keyword("as")
            binding = self.binding()
            return Load(query, binding, span=self._span(start))
        if word == "scale":
            self.advance()
            binding = self.binding()
            self.expect_keyword("to")
            target = self.number()
            return Scale(binding, target, span=self._span(start))
        if word == "place":
            self.advance()
            binding = self.binding()
            self.expect_keyword("next_to")
            anchor = self.binding()
            self.expect_keyword("dir")
            direction = self.vec3()
            return Place(binding, anchor, direction, span=self._span(start))
        if word == "move":
            self.advance()
            binding = self.binding()
            self.expect_keyword("to")
            position = self.vec3()
            return Move(binding, position, span=self._span(start))
        if word == "physics":
            self.advance()
            binding = self.binding()
            self.expect_keyword("mass")
            mass = self.number()
            return Physics(binding, mass, span=self._span(start))
        if word == "destroy_all":
            self.advance()
            return DestroyAll(span=self._span(start))
        if word == "primitive":
            self.advance()
            shape_tok = self.expect("IDENT", "shape (cube|sphere|cylinder|plane)")
            if shape_tok.value not in SHAPES:
                raise ParseError(
                    f"unknown shape {shape_tok.value!r}",
                    shape_tok.line,
                    shape_tok.col,
                    "cube|sphere|cylinder|plane",
                )
            self.expect_keyword("as")
            binding = self.binding()
            return Primitive(shape_tok.value, binding, span=self._span(start))
        if word == "attach":
            self.advance()
            binding = self.binding()
            self.expect_keyword("to")
            joint = self.ident()
            return Attach(binding, joint, span=self._span(start))
        if word == "repeat":
            self.advance()
            count = self.integer()
            if count < 1:
                raise ParseError("repeat count must be positive", start.line, start.col)
            self.expect("LBRACE", "'{'")
            body: list[Statement] = []
            while self.peek().type != "RBRACE":
                if self.peek().type == "EOF":
                    raise self.error("unterminated repeat block", "'}'")
                body.append(self.statement())
            self.expect("RBRACE", "'}'")
            return Repeat(count, tuple(body), span=self._span(start))
        raise self.error(f"unknown statement {word!r}", "statement keyword")

    def _span(self, start: Token) -> Span:
        prev = self.tokens[self.pos - 1] if self.pos else start
        return Span(start.line, start.col, prev.line, prev.col + len(str(prev.value)))

    def program(self, source: str) -> Program:
        statements: list[Statement] = []
        while self.peek().type != "EOF":
            statements.append(self.statement())
        return Program(tuple(statements), source_text=source)


def parse(text: str) -> Program:
    return _Parser(tokenize(text)).program(text)
