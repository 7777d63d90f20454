"""
layout: summarize, validate, export or import layouts.
"""
import argparse

from hexfloquet.cli.common import LAYOUT_HELP, emit
from hexfloquet.core.errors import LayoutError, UsageError
from hexfloquet.models.lattice import Color, Layout
from hexfloquet.services.lattice_service import export_layout, import_layout, resolve_layout, validate_coloring


def register(subparsers) -> None:
    parser = subparsers.add_parser("layout", help="inspect and export heavy-hex layouts")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--name", help=LAYOUT_HELP)
    source.add_argument("--import", dest="import_path", help="layout document to load and validate")
    parser.add_argument("--export", default=None, help="write the JSON layout document ('-' for stdout)")
    parser.set_defaults(handler=cmd_layout)


def summary(layout: Layout) -> str:
    colors = ", ".join(f"{c.value}={len(layout.plaquettes_of_color(c))}" for c in Color)
    return (
        f"{layout.name}: {len(layout.code_qubits)} code, {len(layout.aux_qubits)} auxiliary, "
        f"{len(layout.qubits) - len(layout.active_qubits)} unused qubits; "
        f"{len(layout.links)} links; {len(layout.plaquettes)} plaquettes ({colors})"
    )


def cmd_layout(args: argparse.Namespace) -> int:
    if args.name is not None:
        layout = resolve_layout(args.name)
    elif args.import_path is not None:
        layout = import_layout(args.import_path)
    else:
        raise UsageError("give --name or --import")

    violations = validate_coloring(layout)
    if args.export:
        emit(export_layout(layout), args.export)
    if args.export != "-":
        print(summary(layout))
        for violation in violations:
            print(f"violation: {violation}")
    if violations:
        raise LayoutError(f"layout {layout.name} has {len(violations)} coloring violations")
    return 0
