"""Resolver sampling configuration."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class ResolverConfig:
    collision_temperature: float = 0.5
    codegen_temperature: float = 0.0
    frequency_penalty: float = 0.2
    elaboration_temperature: float = 0.9
    max_tokens: int = 64
    client_kind: str = "mock"  # "mock" | "live"
    elaborate_prompts: bool = True

    def __post_init__(self):
        for name in ("collision_temperature", "codegen_temperature", "elaboration_temperature"):
            value = getattr(self, name)
            if not 0.0 <= value <= 2.0:
                raise ValueError(f"{name} must be in [0, 2], got {value}")
        if self.frequency_penalty < 0.0:
            raise ValueError("frequency_penalty must be non-negative")
        if self.client_kind not in ("mock", "live"):
            raise ValueError(f"unknown client kind {self.client_kind!r}")

    def snapshot(self) -> dict:
        return asdict(self)
