"""
detectors: list (and optionally verify) the detectors of a schedule.
"""
import argparse

from hexfloquet.cli.common import add_code_arguments, build_config, emit, explicit_values
from hexfloquet.core.errors import VerificationError
from hexfloquet.schemas.report_schemas import ExperimentConfig
from hexfloquet.services.code_service import verify_detectors
from hexfloquet.services.experiment_service import ExperimentService


def register(subparsers) -> None:
    parser = subparsers.add_parser("detectors", help="print the detectors of a code on a layout")
    add_code_arguments(parser)
    parser.add_argument("--verify", type=int, nargs="?", const=100, default=None, metavar="TRIALS",
                        help="check every detector on noiseless shots (default 100 trials)")
    parser.add_argument("--circuit", default=None, help="also write the circuit text export here ('-' for stdout)")
    parser.set_defaults(handler=cmd_detectors)


def cmd_detectors(args: argparse.Namespace) -> int:
    config = build_config(ExperimentConfig, explicit_values(args))
    prepared = ExperimentService().prepare(config)
    for detector in prepared.detectors:
        print(detector.to_line())
    if args.circuit:
        emit(prepared.circuit.to_text(), args.circuit)
    if args.verify is not None:
        report = verify_detectors(prepared.circuit, prepared.detectors, trials=args.verify)
        if not report.ok:
            fired = ", ".join(f"D{f.detector_id} ({f.fired}/{report.trials})" for f in report.failures)
            raise VerificationError(f"detectors fired without noise: {fired}")
        print(f"# verified {report.detectors} detectors over {report.trials} noiseless trials")
    return 0
