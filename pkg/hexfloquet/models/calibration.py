"""
Device calibration snapshot models.
Unknown keys in snapshot files are ignored.
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class QubitCalibration(BaseModel):
    """Benchmarking data of one qubit."""
    model_config = ConfigDict(frozen=True, extra="ignore")

    qubit: int = Field(..., ge=0)
    prob_meas1_prep0: float = Field(..., ge=0.0, le=1.0)
    readout_error: float = Field(..., ge=0.0, le=1.0)
    id_error: float = Field(..., ge=0.0, le=1.0)
    id_duration: float = Field(..., gt=0.0)


class CouplingCalibration(BaseModel):
    """Benchmarking data of one CX pair."""
    model_config = ConfigDict(frozen=True, extra="ignore")

    qubits: tuple[int, int]
    cx_error: float = Field(..., ge=0.0, le=1.0)
    cx_duration: float = Field(..., gt=0.0)


class DeviceCalibration(BaseModel):
    """A device benchmarking snapshot."""
    model_config = ConfigDict(frozen=True, extra="ignore")

    device: str
    qubits: tuple[QubitCalibration, ...]
    couplings: tuple[CouplingCalibration, ...] = ()
    meas_duration: float = Field(..., gt=0.0)
    quantum_volume: Optional[int] = Field(default=None, ge=1)  # metadata only
