"""
calib: calibration snapshot summaries and the published reference tables.
"""
import argparse

from hexfloquet.db.reference import reference_table
from hexfloquet.models.codes import CodeFamily
from hexfloquet.services.calibration_service import calibration_noise_model, load_calibration, summary_line


def register(subparsers) -> None:
    parser = subparsers.add_parser("calib", help="device calibration summaries")
    actions = parser.add_subparsers(dest="calib_action", required=True)

    summarize = actions.add_parser("summarize", help="print device,<p>,sigma per snapshot")
    summarize.add_argument("files", nargs="+")
    summarize.set_defaults(handler=cmd_summarize)

    model = actions.add_parser("model", help="print the per-category noise model of a snapshot")
    model.add_argument("file")
    model.set_defaults(handler=cmd_model)

    reference = actions.add_parser("reference", help="print a published device table")
    reference.add_argument("--code", choices=[c.value for c in CodeFamily], default=CodeFamily.HONEYCOMB.value)
    reference.set_defaults(handler=cmd_reference)


def cmd_summarize(args: argparse.Namespace) -> int:
    for path in args.files:
        print(summary_line(load_calibration(path)))
    return 0


def cmd_model(args: argparse.Namespace) -> int:
    model = calibration_noise_model(load_calibration(args.file))
    print(" ".join(f"--{name.replace('_', '-')} {value:.6g}" for name, value in model.model_dump().items()))
    return 0


def cmd_reference(args: argparse.Namespace) -> int:
    for entry in reference_table(CodeFamily(args.code)):
        qv = "-" if entry.quantum_volume is None else str(entry.quantum_volume)
        print(f"{entry.device},{entry.mean_percent:.2f}%,{entry.sigma_percent:.2f}%,{qv}")
    return 0
