"""Selection and deadline-bounded acquisition.

Selection rule: restrict to the top-K records by likes (ties broken by id),
take the minimum vertex count in that pool, and break vertex ties with a
seeded uniform choice. Deterministic given the seed and independent of input
order.

Acquisition walks selection with a per-attempt fetch deadline: a candidate
that exceeds the deadline is excluded and selection repeats, up to
``max_attempts`` fetches. Successful fetches are cached by asset id; cache
hits bypass the deadline logic entirely.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

from ..errors import AllAttemptsTimedOutError, AssetNotFoundError, BudgetExceededError
from .catalog import Catalog
from .records import AssetHandle, AssetRecord, Budget, BudgetDecision, check_budget

LIKE_POOL_SIZE = 10
DEFAULT_DEADLINE_S = 5.0
DEFAULT_MAX_ATTEMPTS = 3


def select(records: Sequence[AssetRecord], seed: int = 0, pool_size: int = LIKE_POOL_SIZE) -> AssetRecord:
    if not records:
        raise AssetNotFoundError("no candidate records")
    pool = sorted(records, key=lambda r: (-r.likes, r.id))[:pool_size]
    min_vertices = min(r.vertex_count for r in pool)
    ties = sorted((r for r in pool if r.vertex_count == min_vertices), key=lambda r: r.id)
    return ties[random.Random(seed).randrange(len(ties))]


class Clock(Protocol):
    def now(self) -> float: ...


class WallClock:
    def now(self) -> float:
        return time.monotonic()


class VirtualClock:
    """Deterministic manually-advanced clock for simulation."""

    def __init__(self, start: float = 0.0):
        self._now = start

    def now(self) -> float:
        return self._now

    def advance(self, dt: float) -> None:
        if dt < 0:
            raise ValueError("cannot advance backwards")
        self._now += dt


class FetchTimeout(Exception):
    pass


class Fetcher(Protocol):
    def fetch(self, record: AssetRecord, deadline_s: float) -> float:
        """Fetch the asset; returns latency in seconds or raises FetchTimeout."""
        ...


class SimulatedFetcher:
    """Scripted per-record latencies charged against a virtual clock."""

    def __init__(
        self,
        clock: VirtualClock,
        latencies: Optional[dict[str, float]] = None,
        default_latency_s: float = 0.0,
    ):
        self.clock = clock
        self.latencies = dict(latencies or {})
        self.default_latency_s = default_latency_s
        self.fetch_count = 0

    def fetch(self, record: AssetRecord, deadline_s: float) -> float:
        self.fetch_count += 1
        latency = self.latencies.get(record.id, self.default_latency_s)
        self.clock.advance(min(latency, deadline_s))
        if latency > deadline_s:
            raise FetchTimeout(f"{record.id} took {latency}s against a {deadline_s}s deadline")
        return latency


@dataclass
class AssetPipeline:
    catalog: Catalog
    fetcher: Fetcher
    clock: Clock
    budget: Budget = field(default_factory=Budget)
    deadline_s: float = DEFAULT_DEADLINE_S
    max_attempts: int = DEFAULT_MAX_ATTEMPTS
    seed: int = 0
    cache: dict[str, AssetHandle] = field(default_factory=dict)

    def search(self, query: str) -> list[AssetRecord]:
        return self.catalog.search(query)

    def check_budget(self, scene_vertex_load: int, record: AssetRecord) -> BudgetDecision:
        return check_budget(scene_vertex_load, record, self.budget)

    def acquire(self, query: str, scene_vertex_load: int = 0) -> AssetHandle:
        records = self.search(query)
        if not records:
            raise AssetNotFoundError(f"no assets match {query!r}")
        admissible = []
        denials = []
        for record in records:
            decision = self.check_budget(scene_vertex_load, record)
            if decision.admitted:
                admissible.append(record)
            else:
                denials.append(decision)
        if not admissible:
            raise BudgetExceededError(
                denials[0].message
                + "; other objects must be removed from the scene before this request can complete"
            )
        excluded: set[str] = set()
        attempts = 0
        while attempts < self.max_attempts:
            pool = [r for r in admissible if r.id not in excluded]
            if not pool:
                break
            record = select(pool, seed=self.seed)
            cached = self.cache.get(record.id)
            if cached is not None:
                return cached
            attempts += 1
            try:
                latency = self.fetcher.fetch(record, self.deadline_s)
            except FetchTimeout:
                excluded.add(record.id)
                continue
            handle = AssetHandle(
                record=record,
                cache_path=f"cache/{record.id}",
                fetch_latency_ms=latency * 1000.0,
            )
            self.cache[record.id] = handle
            return handle
        raise AllAttemptsTimedOutError(
            f"no candidate for {query!r} fetched within {self.deadline_s}s "
            f"after {attempts} attempts"
        )
