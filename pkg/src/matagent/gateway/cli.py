"""Console entry point: run the gateway under uvicorn."""

from __future__ import annotations

import argparse

import uvicorn

from .app import create_app
from .config import GatewayConfig


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(
        prog="matagent-gateway",
        description="Serve the materials-tools REST gateway",
    )
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--host", help="override listen host")
    parser.add_argument("--port", type=int, help="override listen port")
    args = parser.parse_args(argv)

    config = GatewayConfig.load(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


if __name__ == "__main__":
    main()
