"""Gateway configuration: single JSON config file, HOLOFORGE_* environment
overrides, then explicit flag overrides. Every field has a default."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Optional

ENV_PREFIX = "HOLOFORGE_"


@dataclass
class GatewayConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    data_dir: str = "holoforge-data"
    mock_llm: bool = True
    mock_assets: bool = True
    live_llm_base_url: str = ""
    live_llm_api_key: str = ""
    live_llm_model: str = "text-davinci-002"
    catalog_path: str = ""  # custom repository JSON; bundled mock otherwise
    max_sessions: int = 16
    max_clients_per_session: int = 8
    tick_rate: int = 60
    audit_period_ticks: int = 120
    snapshot_period_ticks: int = 12
    barrier_timeout_ticks: int = 600
    collision_temperature: float = 0.5
    codegen_temperature: float = 0.0
    frequency_penalty: float = 0.2
    elaboration_temperature: float = 0.9
    elaborate_prompts: bool = True
    max_scene_vertices: int = 500_000
    max_single_asset_vertices: int = 100_000
    seed: int = 0

    @property
    def data_path(self) -> Path:
        return Path(self.data_dir)

    @property
    def completion_log_path(self) -> Path:
        return self.data_path / "completions.jsonl"


def _coerce(raw: str, target_type: type) -> Any:
    if target_type is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    return raw


def load_config(
    path: Optional[str | Path] = None,
    env: Optional[Mapping[str, str]] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> GatewayConfig:
    env = os.environ if env is None else env
    values: dict[str, Any] = {}
    if path:
        data = json.loads(Path(path).read_text("utf-8"))
        unknown = set(data) - {f.name for f in fields(GatewayConfig)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for f in fields(GatewayConfig):
        env_key = ENV_PREFIX + f.name.upper()
        if env_key in env:
            values[f.name] = _coerce(env[env_key], type(f.default))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return GatewayConfig(**values)
