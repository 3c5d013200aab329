"""Completion clients: deterministic mock and a minimal live HTTP adapter.

Both speak the same interface so the resolver's prompt/parse path is
identical in either mode; only transport behavior differs.
"""

from __future__ import annotations

import json
import re
import socket
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Protocol

from ..errors import ClientError, ClientTimeoutError
from . import oracle

PAIR_RE = re.compile(r"When (.+?) collides with (.+?), it spawns\s*$")


class CompletionClient(Protocol):
    provenance: str

    def complete(
        self, prompt: str, *, temperature: float, max_tokens: int, frequency_penalty: float
    ) -> str: ...


@dataclass
class MockCompletionClient:
    """Continues the collision prompt from the built-in rule table.

    Sampling parameters are accepted and ignored: the mock is deterministic
    by design.
    """

    provenance: str = "mock"

    def complete(
        self, prompt: str, *, temperature: float, max_tokens: int, frequency_penalty: float
    ) -> str:
        match = PAIR_RE.search(prompt.strip().splitlines()[-1])
        if not match:
            raise ClientError("mock client only answers collision prompts")
        return oracle.lookup(match.group(1), match.group(2))


@dataclass
class LiveCompletionClient:
    """Adapter for an OpenAI-style completions endpoint. Optional: nothing in
    the engine requires network access; tests run mock-only."""

    base_url: str
    api_key: str = ""
    model: str = "text-davinci-002"
    timeout_s: float = 30.0
    provenance: str = "live"

    def complete(
        self, prompt: str, *, temperature: float, max_tokens: int, frequency_penalty: float
    ) -> str:
        payload = json.dumps(
            {
                "model": self.model,
                "prompt": prompt,
                "temperature": temperature,
                "max_tokens": max_tokens,
                "frequency_penalty": frequency_penalty,
            }
        ).encode()
        request = urllib.request.Request(
            self.base_url.rstrip("/") + "/completions",
            data=payload,
            headers={
                "Content-Type": "application/json",
                **({"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}),
            },
        )
        try:
            with urllib.request.urlopen(request, timeout=self.timeout_s) as response:
                body = json.loads(response.read().decode())
        except socket.timeout as exc:
            raise ClientTimeoutError(str(exc)) from exc
        except urllib.error.URLError as exc:
            if isinstance(exc.reason, socket.timeout):
                raise ClientTimeoutError(str(exc)) from exc
            raise ClientError(str(exc)) from exc
        try:
            return body["choices"][0]["text"]
        except (KeyError, IndexError) as exc:
            raise ClientError(f"malformed completion response: {body!r}") from exc
