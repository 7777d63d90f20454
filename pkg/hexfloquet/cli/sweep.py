"""
sweep: detection rates against noise strength.
"""
import argparse

from hexfloquet.cli.common import (
    add_code_arguments,
    add_output_arguments,
    add_sampling_arguments,
    build_config,
    emit,
    explicit_values,
    load_config_file,
)
from hexfloquet.cli.run import render
from hexfloquet.core.errors import UsageError
from hexfloquet.schemas.report_schemas import SweepConfig
from hexfloquet.services.experiment_service import ExperimentService


def _p_list(values: list[str]) -> list[float]:
    """Accepts '0.01 0.02' as well as '0.01,0.02'."""
    out = []
    for value in values:
        for token in value.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                out.append(float(token))
            except ValueError:
                raise UsageError(f"not a probability: {token!r}") from None
    return out


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="detection rates over a list of p values")
    add_code_arguments(parser, repeatable=True)
    add_sampling_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--p-values", nargs="*", default=None, help="noise strengths to sweep")
    parser.add_argument("--config", default=None, help="JSON file with the same keys as the flags")
    parser.add_argument("--per-plaquette", action="store_true", help="include plaquette rows, not only aggregates")
    parser.set_defaults(handler=cmd_sweep)


def cmd_sweep(args: argparse.Namespace) -> int:
    """One aggregate row per (code, p); flags override config-file keys."""
    base = load_config_file(args.config) if args.config else {}
    values = explicit_values(args)
    if args.p_values is not None:
        values["p_values"] = _p_list(args.p_values)
    if args.codes:
        values["codes"] = args.codes
    config = build_config(SweepConfig, values, base)
    if not config.p_values:
        raise UsageError("sweep needs at least one p value (--p-values or p_values in --config)")

    reports = ExperimentService(threads=config.threads).sweep(config)
    emit(render(reports, config, aggregate_only=not args.per_plaquette), config.output)
    return 0
