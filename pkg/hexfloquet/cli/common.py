"""
Shared argument groups and helpers for the subcommands.
Experiment flags default to None so that sweep config files can supply them.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Type, TypeVar

from pydantic import ValidationError

from hexfloquet.core.config import settings
from hexfloquet.core.errors import UsageError
from hexfloquet.db.devices import DEVICE_NAMES
from hexfloquet.models.codes import CodeFamily
from hexfloquet.models.lattice import Color
from hexfloquet.schemas.report_schemas import ExperimentConfig

ConfigT = TypeVar("ConfigT", bound=ExperimentConfig)

LAYOUT_HELP = f"device ({', '.join(DEVICE_NAMES)}) or patch:RxC"


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"not a probability: {text}")
    return value


def add_code_arguments(parser: argparse.ArgumentParser, repeatable: bool = False) -> None:
    codes = [c.value for c in CodeFamily]
    if repeatable:
        parser.add_argument("--code", dest="codes", action="append", choices=codes, default=None,
                            help="code to simulate; repeat to sweep both")
    else:
        parser.add_argument("--code", choices=codes, default=None, help="code to simulate (default honeycomb)")
    parser.add_argument("--layout", default=None, help=LAYOUT_HELP)
    parser.add_argument("--rounds", type=int, default=None, help="rounds (default 7 honeycomb, 10 color)")
    parser.add_argument("--no-reset", dest="reset_aux", action="store_const", const=False, default=None,
                        help="do not reset auxiliary qubits between measurements")
    parser.add_argument("--order", default=None, help="honeycomb color order, e.g. RGB or GBR")
    parser.add_argument("--start-color", type=Color.parse, default=None, help="first Color-code round color")
    parser.add_argument("--start-basis", choices=["x", "z"], default=None, help="first Color-code round basis")
    parser.add_argument("--allow-empty-rounds", action="store_const", const=True, default=None,
                        help="let rounds whose color has no links emit nothing")


def add_noise_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("noise")
    group.add_argument("--p", type=_probability, default=None, help="uniform error probability")
    group.add_argument("--p-prep", type=_probability, default=None)
    group.add_argument("--p-meas", type=_probability, default=None)
    group.add_argument("--p-cx", type=_probability, default=None)
    group.add_argument("--p-idle", type=_probability, default=None)


def add_sampling_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("sampling")
    group.add_argument("--shots", type=int, default=None, help="Monte-Carlo shots (default 10000)")
    group.add_argument("--seed", type=int, default=None, help=f"base seed (default {settings.DEFAULT_SEED})")
    group.add_argument("--threads", type=int, default=None, help="worker threads (fallback FLOQUET_THREADS)")


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("output")
    group.add_argument("--output", default=None, help="report file; '-' for standard output")
    group.add_argument("--json", dest="output_format", action="store_const", const="json", default=None,
                       help="write the JSON mirror instead of CSV")


_EXPERIMENT_KEYS = (
    "code", "layout", "rounds", "reset_aux", "order", "start_color", "start_basis",
    "allow_empty_rounds", "p", "p_prep", "p_meas", "p_cx", "p_idle",
    "shots", "seed", "threads", "output", "output_format", "dump_shots",
)


def explicit_values(args: argparse.Namespace, keys=_EXPERIMENT_KEYS) -> dict[str, Any]:
    """Flags the user actually gave."""
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def build_config(model: Type[ConfigT], values: dict[str, Any], base: Optional[dict[str, Any]] = None) -> ConfigT:
    """Validate flags merged over an optional config mapping; errors become usage errors."""
    merged = dict(base or {})
    merged.update(values)
    merged.setdefault("seed", settings.DEFAULT_SEED)
    try:
        return model.model_validate(merged)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        )
        raise UsageError(problems) from e


def load_config_file(path: str) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    return data


def emit(text: str, path: Optional[str]) -> None:
    """Write to a file, or to standard output for None or '-'."""
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
