from __future__ import annotations

from pathlib import Path

import pytest

from holoforge.assets import (
    AssetPipeline,
    Budget,
    Catalog,
    SimulatedFetcher,
    VirtualClock,
    load_mock_catalog,
)
from holoforge.replication import Session
from holoforge.resolver import CompletionLog, Resolver

CORPUS_DIR = Path(__file__).parent / "fixtures" / "corpus"


@pytest.fixture(scope="session")
def catalog() -> Catalog:
    return load_mock_catalog()


@pytest.fixture
def make_pipeline(catalog):
    def _make(
        latencies=None,
        default_latency_s=0.0,
        budget=None,
        seed=0,
        deadline_s=5.0,
        max_attempts=3,
        records=None,
    ):
        clock = VirtualClock()
        fetcher = SimulatedFetcher(clock, latencies=latencies, default_latency_s=default_latency_s)
        return AssetPipeline(
            catalog=Catalog.from_records(records) if records is not None else catalog,
            fetcher=fetcher,
            clock=clock,
            budget=budget or Budget(),
            deadline_s=deadline_s,
            max_attempts=max_attempts,
            seed=seed,
        )

    return _make


@pytest.fixture
def make_session(make_pipeline, tmp_path):
    counter = iter(range(1, 1000))

    def _make(mode="pong", seed=0, log_path=None, pipeline=None, session_id=None, **kwargs):
        resolver = Resolver(log=CompletionLog(path=log_path))
        return Session(
            session_id or f"test-{next(counter)}",
            mode,
            resolver,
            pipeline if pipeline is not None else make_pipeline(seed=seed),
            seed=seed,
            **kwargs,
        )

    return _make


@pytest.fixture
def corpus_files() -> list[Path]:
    files = sorted(CORPUS_DIR.glob("*.scn"))
    assert files, "corpus fixtures missing"
    return files
