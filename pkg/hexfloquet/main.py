"""
Command-line entry point.
Registers the subcommands and maps library errors to exit statuses.
"""
import argparse
import sys
from typing import Optional, Sequence

from hexfloquet.cli import calib, detectors, layout, run, sweep
from hexfloquet.core.config import settings
from hexfloquet.core.errors import FloquetError
from hexfloquet.core.logging import event_log


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Floquet code circuits on heavy-hexagon lattices: build, simulate, report.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    parser.add_argument("--log-level", default=None, help="JSON event log threshold (default FLOQUET_LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Register subcommands
    for module in (run, sweep, detectors, layout, calib):
        module.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.log_level:
        event_log.set_level(args.log_level)

    try:
        return args.handler(args)
    except FloquetError as e:
        event_log.error("cli.failed", error=e.message, details={"command": args.command})
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_status


def main_entry() -> None:
    """Console-script wrapper."""
    sys.exit(main())
