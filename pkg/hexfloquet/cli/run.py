"""
run: one experiment point.
"""
import argparse

from hexfloquet.cli.common import (
    add_code_arguments,
    add_noise_arguments,
    add_output_arguments,
    add_sampling_arguments,
    build_config,
    emit,
    explicit_values,
)
from hexfloquet.engine.shots import write_binary
from hexfloquet.schemas.report_schemas import DetectionReport, ExperimentConfig, OutputFormat
from hexfloquet.services.analysis_service import reports_to_csv, reports_to_json
from hexfloquet.services.experiment_service import ExperimentService


def register(subparsers) -> None:
    parser = subparsers.add_parser("run", help="simulate one code/layout/noise point")
    add_code_arguments(parser)
    add_noise_arguments(parser)
    add_sampling_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--dump-shots", default=None, help="also write the raw ShotTable (binary)")
    parser.set_defaults(handler=cmd_run)


def aggregate_line(report: DetectionReport) -> str:
    meta = report.metadata
    head = f"{meta.code.value} {meta.layout} reset={str(meta.reset_aux).lower()} p={meta.p} shots={meta.shots}"
    if report.mean is None:
        return f"{head} no detectors"
    return f"{head} mean={report.mean:.4f} min={report.min:.4f} max={report.max:.4f}"


def render(reports: list[DetectionReport], config: ExperimentConfig, aggregate_only: bool = False) -> str:
    header = config.header_items()
    if config.output_format == OutputFormat.JSON:
        return reports_to_json(reports, header)
    return reports_to_csv(reports, header, aggregate_only=aggregate_only)


def cmd_run(args: argparse.Namespace) -> int:
    """
    Build layout, schedule, circuit and noise; sample; report.
    The aggregate line goes to standard output unless the report itself does.
    """
    config = build_config(ExperimentConfig, explicit_values(args))
    service = ExperimentService(threads=config.threads)
    report, table = service.run(config)

    if config.dump_shots:
        write_binary(table, config.dump_shots)
    if config.output:
        emit(render([report], config), config.output)
    if config.output != "-":
        print(aggregate_line(report))
    return 0
