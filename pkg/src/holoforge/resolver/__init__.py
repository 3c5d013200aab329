from .clients import CompletionClient, LiveCompletionClient, MockCompletionClient
from .config import ResolverConfig
from .oracle import RULE_TABLE, lookup
from .resolver import (
    CompletionLog,
    InteractionResolution,
    Resolver,
    build_collision_prompt,
    collision_context,
    parse_completion,
    serialize_record,
)
from . import lexicon

__all__ = [
    "CompletionClient",
    "LiveCompletionClient",
    "MockCompletionClient",
    "ResolverConfig",
    "RULE_TABLE",
    "lookup",
    "CompletionLog",
    "InteractionResolution",
    "Resolver",
    "build_collision_prompt",
    "collision_context",
    "parse_completion",
    "serialize_record",
    "lexicon",
]
