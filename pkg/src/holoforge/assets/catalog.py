"""Asset catalog: bundled mock repository plus substring search."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .records import AssetRecord


@dataclass
class Catalog:
    records: list[AssetRecord]

    def search(self, query: str) -> list[AssetRecord]:
        """Case-insensitive substring match on name or tags, id order."""
        if not query.strip():
            raise ValueError("empty query")
        needle = query.strip().lower()
        hits = [
            r
            for r in self.records
            if needle in r.name.lower() or any(needle in t.lower() for t in r.tags)
        ]
        return sorted(hits, key=lambda r: r.id)

    def by_id(self, asset_id: str) -> AssetRecord:
        for r in self.records:
            if r.id == asset_id:
                return r
        raise KeyError(asset_id)

    @staticmethod
    def from_records(records: Iterable[AssetRecord]) -> "Catalog":
        return Catalog(sorted(records, key=lambda r: r.id))

    @staticmethod
    def from_json(text: str) -> "Catalog":
        return Catalog.from_records(AssetRecord.from_dict(d) for d in json.loads(text))

    @staticmethod
    def from_file(path: str | Path) -> "Catalog":
        return Catalog.from_json(Path(path).read_text("utf-8"))


def load_mock_catalog() -> Catalog:
    text = resources.files("holoforge.data").joinpath("mock_catalog.json").read_text("utf-8")
    return Catalog.from_json(text)
