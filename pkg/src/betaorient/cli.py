"""Command-line client.

By default commands run in-process through the same handlers the HTTP
service uses; with --server they are forwarded to a running service instead.
Exit codes: 0 property holds / artifact produced, 1 property fails (witness
emitted), 2 budget exhausted, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .handlers import CommandResult, VerdictCache, run_command

GRAPH_COMMANDS = (
    "weight",
    "contractible",
    "szk",
    "orient",
    "mod-orient",
    "circular",
    "asf",
    "reduce",
    "discharge",
    "scan",
    "trees",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betaorient",
        description="Orientation, connectivity, and discharging checks for planar multigraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_graph: bool = True) -> None:
        if with_graph:
            p.add_argument("graph", help="MGF file path, or '-' for stdin")
        p.add_argument("--budget", type=int, default=None, help="search node budget")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--cache", default=None, help="verdict cache file (JSONL)")
        p.add_argument("--server", default=None, help="base URL of a running service")

    for name in ("weight", "contractible", "asf", "reduce", "discharge", "scan", "trees"):
        add_common(sub.add_parser(name))

    p = sub.add_parser("szk")
    add_common(p)
    p.add_argument("--k", type=int, default=5)

    p = sub.add_parser("orient")
    add_common(p)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--beta", required=True, help="comma-separated residues, one per vertex")

    p = sub.add_parser("mod-orient")
    add_common(p)
    p.add_argument("--k", type=int, default=5)

    p = sub.add_parser("circular")
    add_common(p)
    p.add_argument("--t", type=int, default=2)

    p = sub.add_parser("enumerate4v")
    add_common(p, with_graph=False)
    p.add_argument("--min-edges", type=int, default=12)
    p.add_argument("--max-edges", type=int, default=13)
    p.add_argument("--mu-max", type=int, default=4)
    p.add_argument("--require-trees", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8351)

    return parser


def _read_graph(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _remote(server: str, command: str, graph_text: Optional[str], opts: dict) -> CommandResult:
    import httpx

    payload: dict = {k: v for k, v in opts.items() if v is not None and k != "cache"}
    if graph_text is not None:
        payload["mgf"] = graph_text
    resp = httpx.post(f"{server.rstrip('/')}/v1/{command}", json=payload, timeout=None)
    resp.raise_for_status()
    body = resp.json()
    exit_code = body.pop("exit_code", 0)
    report = {k: v for k, v in body.items() if v is not None}
    return CommandResult(report, exit_code)


def _print_text(report: dict) -> None:
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"{key}: {value}")


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command

    if command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    graph_text = None
    if command in GRAPH_COMMANDS:
        try:
            graph_text = _read_graph(args.graph)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3

    opts: dict = {"budget": args.budget}
    for key in ("k", "beta", "t", "jobs"):
        if hasattr(args, key):
            opts[key] = getattr(args, key)
    for key in ("min_edges", "max_edges", "mu_max", "require_trees"):
        if hasattr(args, key):
            opts[key] = getattr(args, key)

    if args.server:
        result = _remote(args.server, command, graph_text, opts)
    else:
        if getattr(args, "cache", None):
            opts["cache"] = VerdictCache(args.cache)
        result = run_command(command, graph_text, opts)

    if args.format == "text":
        _print_text(result.report)
    else:
        print(json.dumps(result.report, indent=2))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
