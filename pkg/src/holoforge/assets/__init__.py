from .catalog import Catalog, load_mock_catalog
from .pipeline import (
    AssetPipeline,
    DEFAULT_DEADLINE_S,
    DEFAULT_MAX_ATTEMPTS,
    FetchTimeout,
    LIKE_POOL_SIZE,
    SimulatedFetcher,
    VirtualClock,
    WallClock,
    select,
)
from .records import (
    AssetHandle,
    AssetRecord,
    Budget,
    BudgetDecision,
    check_budget,
)

__all__ = [
    "Catalog",
    "load_mock_catalog",
    "AssetPipeline",
    "DEFAULT_DEADLINE_S",
    "DEFAULT_MAX_ATTEMPTS",
    "FetchTimeout",
    "LIKE_POOL_SIZE",
    "SimulatedFetcher",
    "VirtualClock",
    "WallClock",
    "select",
    "AssetHandle",
    "AssetRecord",
    "Budget",
    "BudgetDecision",
    "check_budget",
]
