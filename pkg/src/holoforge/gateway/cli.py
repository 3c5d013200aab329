"""Command-line entry point: `holoforge [--config ...] [--port ...]`."""

from __future__ import annotations

import argparse
import logging
from typing import Optional

from .config import load_config
from .service import create_app


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoforge",
        description="Prompt-driven scene synthesis and replication gateway",
    )
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--host", help="bind address (default 127.0.0.1)")
    parser.add_argument("--port", type=int, help="bind port (default 8765)")
    parser.add_argument("--data-dir", dest="data_dir", help="persistence directory")
    parser.add_argument(
        "--mock-llm",
        dest="mock_llm",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="use the deterministic mock completion client (default on)",
    )
    parser.add_argument(
        "--mock-assets",
        dest="mock_assets",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="use the bundled mock asset catalog (default on)",
    )
    parser.add_argument("--seed", type=int, help="deterministic seed for new sessions")
    parser.add_argument("--log-level", default="info")
    return parser


def main(argv: Optional[list[str]] = None) -> None:
    args = build_parser().parse_args(argv)
    overrides = {
        "host": args.host,
        "port": args.port,
        "data_dir": args.data_dir,
        "mock_llm": args.mock_llm,
        "mock_assets": args.mock_assets,
        "seed": args.seed,
    }
    config = load_config(path=args.config, overrides=overrides)
    logging.basicConfig(level=args.log_level.upper())

    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level=args.log_level)


if __name__ == "__main__":
    main()
