"""
Calibration service.
Loads device benchmarking snapshots and condenses them into the mean error
<p>, its spread sigma, and a per-category noise model.
"""
import json
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from hexfloquet.core.errors import CalibrationError, NoiseError
from hexfloquet.core.logging import event_log
from hexfloquet.models.calibration import DeviceCalibration
from hexfloquet.models.noise import NoiseModel
from hexfloquet.services.noise_service import idle_extrapolation


def load_calibration(path: Union[str, Path]) -> DeviceCalibration:
    """Parse a JSON snapshot; unknown keys are ignored, missing or out-of-range values are errors."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise CalibrationError(f"cannot read calibration {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise CalibrationError(f"calibration {path} is not valid JSON: {e}") from e
    try:
        calibration = DeviceCalibration.model_validate(raw)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise CalibrationError(f"invalid calibration {path}: {problems}") from e
    event_log.info(
        "calibration.loaded",
        target_type="device",
        target_id=calibration.device,
        details={"qubits": len(calibration.qubits), "couplings": len(calibration.couplings)},
    )
    return calibration


def save_calibration(calibration: DeviceCalibration, path: Union[str, Path]) -> None:
    Path(path).write_text(calibration.model_dump_json(indent=2) + "\n", encoding="utf-8")


def idle_timescale(calibration: DeviceCalibration) -> float:
    """Measurement duration plus the longest CX duration on the device."""
    longest_cx = max((c.cx_duration for c in calibration.couplings), default=0.0)
    return calibration.meas_duration + longest_cx


def idle_errors(calibration: DeviceCalibration) -> list[float]:
    """One extrapolated idle error per qubit."""
    t = idle_timescale(calibration)
    try:
        return [idle_extrapolation(q.id_error, q.id_duration, t) for q in calibration.qubits]
    except NoiseError as e:
        raise CalibrationError(f"calibration {calibration.device}: {e.message}") from e


def error_multiset(calibration: DeviceCalibration) -> list[float]:
    """Prep errors, measurement errors, CX errors, then extrapolated idle errors."""
    if not calibration.qubits:
        raise CalibrationError(f"calibration {calibration.device} has no qubits")
    return (
        [q.prob_meas1_prep0 for q in calibration.qubits]
        + [q.readout_error for q in calibration.qubits]
        + [c.cx_error for c in calibration.couplings]
        + idle_errors(calibration)
    )


def mean_error(calibration: DeviceCalibration) -> tuple[float, float]:
    """(<p>, sigma) with sigma the population standard deviation."""
    values = np.array(error_multiset(calibration), dtype=np.float64)
    return float(values.mean()), float(values.std(ddof=0))


def calibration_noise_model(calibration: DeviceCalibration) -> NoiseModel:
    """Per-category means of the snapshot."""
    if not calibration.qubits:
        raise CalibrationError(f"calibration {calibration.device} has no qubits")
    couplings = calibration.couplings
    return NoiseModel(
        p_prep=float(np.mean([q.prob_meas1_prep0 for q in calibration.qubits])),
        p_meas=float(np.mean([q.readout_error for q in calibration.qubits])),
        p_cx=float(np.mean([c.cx_error for c in couplings])) if couplings else 0.0,
        p_idle=float(np.mean(idle_errors(calibration))),
    )


def summary_line(calibration: DeviceCalibration) -> str:
    """device,<p>%,sigma% with two decimals, as in the published device tables."""
    mean, sigma = mean_error(calibration)
    return f"{calibration.device},{mean * 100:.2f}%,{sigma * 100:.2f}%"
