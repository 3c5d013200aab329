"""Collision resolution and scene prompt services.

Builds the few-shot collision prompt from the bundled context file, queries
a pluggable completion client, normalizes completions into object labels,
and appends one JSONL record per resolution to the completion log.
"""

from __future__ import annotations

import json
import string
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from ..errors import EmptyCompletionError, EmptyLabelError
from .clients import CompletionClient, MockCompletionClient
from .config import ResolverConfig
from . import lexicon

_ARTICLES = ("a ", "an ", "the ")
_STRIP_CHARS = string.whitespace + string.punctuation
MAX_LABEL_WORDS = 5


def collision_context() -> str:
    return resources.files("holoforge.data").joinpath("collision_context.txt").read_text("utf-8")


def build_collision_prompt(ball: str, paddle: str) -> str:
    """The shipped few-shot context with its query line substituted."""
    if not ball.strip() or not paddle.strip():
        raise EmptyLabelError("collision labels must be nonempty")
    lines = collision_context().rstrip("\n").splitlines()
    lines[-1] = f"When {ball.strip()} collides with {paddle.strip()}, it spawns"
    return "\n".join(lines) + "\n"


def _normalize_once(text: str) -> str:
    for i, ch in enumerate(text):
        if ch in ".!?\n":
            text = text[:i]
            break
    text = " ".join(text.split())  # collapse unicode whitespace
    text = text.strip(_STRIP_CHARS).lower()
    changed = True
    while changed:
        changed = False
        for article in _ARTICLES:
            if text.startswith(article):
                text = text[len(article) :].lstrip()
                changed = True
        if text.endswith(" object"):
            text = text[: -len(" object")].rstrip()
            changed = True
    return " ".join(text.split()[:MAX_LABEL_WORDS])


def parse_completion(raw: str) -> str:
    """Normalize a raw completion into an object label.

    Takes text up to the first sentence terminator or newline, strips edge
    whitespace/punctuation, lowercases, drops leading articles and trailing
    "object" qualifiers, and truncates to five words. Runs the normalization
    to a fixpoint, so the result is idempotent.
    """
    text = raw
    for _ in range(8):
        normalized = _normalize_once(text)
        if normalized == text:
            break
        text = normalized
    if not text:
        raise EmptyCompletionError(f"no label in completion {raw!r}")
    return text


@dataclass
class InteractionResolution:
    ball_object: str
    paddle_object: str
    output_object: str
    prompt_text: str
    raw_completion: str
    provenance: str
    timestamp: float
    config: dict


@dataclass
class CompletionLog:
    """Append-only JSONL log of every collision resolution."""

    path: Optional[Path] = None
    records: list[dict] = field(default_factory=list)

    def append(self, record: dict) -> None:
        self.records.append(record)
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(serialize_record(record) + "\n")

    @staticmethod
    def replay(path: Path | str) -> list[dict]:
        records = []
        for line in Path(path).read_text("utf-8").splitlines():
            if line.strip():
                records.append(json.loads(line))
        return records


def serialize_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


@dataclass
class Resolver:
    config: ResolverConfig = field(default_factory=ResolverConfig)
    client: CompletionClient = field(default_factory=MockCompletionClient)
    log: CompletionLog = field(default_factory=CompletionLog)
    now: Callable[[], float] = time.time  # injectable for deterministic tests

    def resolve_collision(self, ball: str, paddle: str) -> InteractionResolution:
        prompt = build_collision_prompt(ball, paddle)
        raw = self.client.complete(
            prompt,
            temperature=self.config.collision_temperature,
            max_tokens=self.config.max_tokens,
            frequency_penalty=self.config.frequency_penalty,
        )
        output = parse_completion(raw)
        resolution = InteractionResolution(
            ball_object=ball.strip().lower(),
            paddle_object=paddle.strip().lower(),
            output_object=output,
            prompt_text=prompt,
            raw_completion=raw,
            provenance=self.client.provenance,
            timestamp=self.now(),
            config=self.config.snapshot(),
        )
        self.log.append(
            {
                "timestamp": resolution.timestamp,
                "ball": resolution.ball_object,
                "paddle": resolution.paddle_object,
                "output": resolution.output_object,
                "provenance": resolution.provenance,
                "temperature": self.config.collision_temperature,
                "raw_completion": raw,
            }
        )
        return resolution

    def elaborate_scene_prompt(self, prompt: str) -> str:
        if not prompt.strip():
            raise EmptyLabelError("scene prompt must be nonempty")
        if not self.config.elaborate_prompts:
            return prompt
        if self.config.client_kind == "live":
            return self.client.complete(
                prompt
                + "\n\nElaborate the request above into a detailed step-by-step "
                "instruction for furnishing the room.",
                temperature=self.config.elaboration_temperature,
                max_tokens=self.config.max_tokens,
                frequency_penalty=self.config.frequency_penalty,
            )
        return lexicon.elaborate_text(prompt)

    def generate_scene_program(self, prompt: str) -> Optional[str]:
        """Prompt -> scene-command program text (mock: lexicon-driven; live:
        the model is prompted for this command language, nothing else)."""
        if self.config.client_kind == "live":
            return self.client.complete(
                lexicon.build_codegen_prompt(prompt),
                temperature=self.config.codegen_temperature,
                max_tokens=self.config.max_tokens,
                frequency_penalty=self.config.frequency_penalty,
            )
        return lexicon.generate_program_text(prompt)
