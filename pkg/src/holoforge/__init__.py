"""holoforge: server-authoritative prompt-driven scene synthesis and replication."""

__version__ = "0.1.0"
