"""
Pydantic schemas for documents, reports and experiment configuration.
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from hexfloquet.models.codes import CodeFamily, RoundBasis
from hexfloquet.models.lattice import Color, PauliType, QubitRole
from hexfloquet.models.noise import NoiseModel


# ============ Layout Document Schemas ============

class QubitRecord(BaseModel):
    """One entry of the layout document's qubit list."""
    id: int = Field(..., ge=0)
    role: QubitRole


class LinkRecord(BaseModel):
    """One entry of the layout document's link list."""
    id: int = Field(..., ge=0)
    pauli_type: PauliType
    color: Color
    endpoints: tuple[int, int]
    aux: int


class PlaquetteRecord(BaseModel):
    """One entry of the layout document's plaquette list."""
    id: int = Field(..., ge=0)
    color: Color
    vertices: list[int]
    boundary: list[int]


class LayoutDocument(BaseModel):
    """JSON layout document."""
    name: str
    qubits: list[QubitRecord]
    links: list[LinkRecord]
    plaquettes: list[PlaquetteRecord]
    coupling: list[tuple[int, int]]


# ============ Validation Schemas ============

class ViolationSubject(str, Enum):
    """Kind of object a coloring violation refers to."""
    LINK = "link"
    PLAQUETTE = "plaquette"
    QUBIT = "qubit"


class ColoringViolation(BaseModel):
    """One broken layout invariant."""
    subject: ViolationSubject
    subject_id: int
    message: str

    def __str__(self) -> str:
        return f"{self.subject.value} {self.subject_id}: {self.message}"


class DetectorFailure(BaseModel):
    """A detector that fired on a noiseless shot."""
    detector_id: int
    plaquette_id: int
    basis: RoundBasis
    fired: int = Field(..., ge=1, description="number of trials with parity 1")


class VerificationReport(BaseModel):
    """Outcome of noiseless detector verification."""
    trials: int
    detectors: int
    failures: list[DetectorFailure] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


# ============ Detection Rate Schemas ============

class DetectorRate(BaseModel):
    """Firing fraction of one detector."""
    detector_id: int
    plaquette_id: int
    color: Color
    basis: RoundBasis
    rate: float = Field(..., ge=0.0, le=1.0)
    stderr: float = Field(..., ge=0.0)


class PlaquetteRate(BaseModel):
    """Mean firing fraction of the detectors of one (plaquette, basis)."""
    plaquette_id: int
    color: Color
    basis: RoundBasis
    rate: float = Field(..., ge=0.0, le=1.0)
    stderr: float = Field(..., ge=0.0)
    detectors: int = Field(..., ge=1)


class RunMetadata(BaseModel):
    """Everything needed to regenerate one report."""
    code: Optional[CodeFamily] = None
    layout: Optional[str] = None
    reset_aux: Optional[bool] = None
    p: Optional[float] = None
    shots: int
    seed: Optional[int] = None


class DetectionReport(BaseModel):
    """Detector, plaquette and aggregate detection rates of one experiment point."""
    metadata: RunMetadata
    detector_rates: list[DetectorRate]
    plaquette_rates: list[PlaquetteRate]
    mean: Optional[float] = None
    min: Optional[float] = None
    max: Optional[float] = None
    mean_stderr: Optional[float] = None

    @model_validator(mode="after")
    def check_aggregates(self) -> "DetectionReport":
        if self.mean is not None and not (self.min - 1e-12 <= self.mean <= self.max + 1e-12):
            raise ValueError("aggregates must satisfy min <= mean <= max")
        return self


# ============ Experiment Configuration Schemas ============

class OutputFormat(str, Enum):
    """Report file format."""
    CSV = "csv"
    JSON = "json"


class ExperimentConfig(BaseModel):
    """One experiment: code, layout, schedule, noise and sampling."""
    model_config = ConfigDict(extra="forbid")

    code: CodeFamily = CodeFamily.HONEYCOMB
    layout: str = "falcon27"
    rounds: Optional[int] = Field(default=None, ge=1)
    reset_aux: bool = True
    p: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    p_prep: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    p_meas: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    p_cx: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    p_idle: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    shots: int = Field(default=10_000, ge=1)
    seed: int = Field(default=20220, ge=0)
    threads: Optional[int] = Field(default=None, ge=1)
    order: Optional[str] = None
    start_color: Color = Color.RED
    start_basis: RoundBasis = RoundBasis.X
    allow_empty_rounds: bool = False
    output: Optional[str] = None
    output_format: OutputFormat = OutputFormat.CSV
    dump_shots: Optional[str] = None

    @field_validator("start_basis")
    @classmethod
    def color_code_basis(cls, v: RoundBasis) -> RoundBasis:
        if v not in (RoundBasis.X, RoundBasis.Z):
            raise ValueError("Color-code schedules start in basis x or z")
        return v

    @model_validator(mode="after")
    def check_noise(self) -> "ExperimentConfig":
        per_category = (self.p_prep, self.p_meas, self.p_cx, self.p_idle)
        if self.p is not None and any(v is not None for v in per_category):
            raise ValueError("give either p or the per-category probabilities, not both")
        return self

    def rounds_for(self, code: CodeFamily) -> int:
        """Defaults reproduce the minimal schedules: 7 honeycomb, 10 Color code."""
        if self.rounds is not None:
            return self.rounds
        return 7 if code == CodeFamily.HONEYCOMB else 10

    @property
    def effective_rounds(self) -> int:
        return self.rounds_for(self.code)

    def noise_model(self) -> NoiseModel:
        if self.p is not None:
            return NoiseModel.uniform(self.p)
        return NoiseModel(
            p_prep=self.p_prep or 0.0,
            p_meas=self.p_meas or 0.0,
            p_cx=self.p_cx or 0.0,
            p_idle=self.p_idle or 0.0,
        )

    def header_items(self) -> list[tuple[str, str]]:
        """Key/value pairs embedded in output files; excludes fields that never change results."""
        skip = {"threads", "output", "output_format", "dump_shots"}
        items = []
        for key, value in self.model_dump(mode="json").items():
            if key in skip:
                continue
            if key == "rounds":
                value = self.effective_rounds
            items.append((key, "" if value is None else str(value).lower() if isinstance(value, bool) else str(value)))
        return items


class SweepConfig(ExperimentConfig):
    """A sweep over noise strengths, optionally over both codes."""
    p_values: list[float] = Field(default_factory=list)
    codes: list[CodeFamily] = Field(default_factory=list)

    @field_validator("p_values")
    @classmethod
    def probabilities(cls, v: list[float]) -> list[float]:
        for p in v:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p={p} is not a probability")
        return v

    @property
    def sweep_codes(self) -> list[CodeFamily]:
        return self.codes or [self.code]

    def header_items(self) -> list[tuple[str, str]]:
        """The codes key replaces code; rounds are listed per code as code:rounds."""
        items = []
        for key, value in super().header_items():
            if key in ("code", "p", "p_values", "codes"):
                continue
            if key == "rounds":
                value = ",".join(f"{c.value}:{self.rounds_for(c)}" for c in self.sweep_codes)
            items.append((key, value))
        items.append(("p_values", ",".join(repr(float(p)) for p in self.p_values)))
        items.append(("codes", ",".join(c.value for c in self.sweep_codes)))
        return items
