"""
Circuit intermediate representation.
A circuit is an ordered list of instructions; program order is time order.
"""
import hashlib
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from hexfloquet.models.lattice import Layout


class InstructionKind(str, Enum):
    """Instruction opcodes, including the noise channels inserted by the noise service."""
    PREP_Z = "prep_z"
    GATE_H = "gate_h"
    GATE_S = "gate_s"
    GATE_SDG = "gate_sdg"
    GATE_X = "gate_x"
    GATE_CX = "gate_cx"
    MEASURE_Z = "measure_z"
    LAYER_BOUNDARY = "layer_boundary"
    IDLE_WINDOW = "idle_window"
    X_ERROR = "x_error"
    DEPOLARIZE1 = "depolarize1"
    DEPOLARIZE2 = "depolarize2"


SINGLE_QUBIT_GATES = frozenset({
    InstructionKind.GATE_H,
    InstructionKind.GATE_S,
    InstructionKind.GATE_SDG,
    InstructionKind.GATE_X,
})

CHANNELS = frozenset({
    InstructionKind.X_ERROR,
    InstructionKind.DEPOLARIZE1,
    InstructionKind.DEPOLARIZE2,
})

MARKERS = frozenset({InstructionKind.LAYER_BOUNDARY, InstructionKind.IDLE_WINDOW})

TEXT_OPCODES = {
    InstructionKind.PREP_Z: "RZ",
    InstructionKind.GATE_H: "H",
    InstructionKind.GATE_S: "S",
    InstructionKind.GATE_SDG: "SDG",
    InstructionKind.GATE_X: "X",
    InstructionKind.GATE_CX: "CX",
    InstructionKind.MEASURE_Z: "MZ",
    InstructionKind.LAYER_BOUNDARY: "LAYER",
    InstructionKind.IDLE_WINDOW: "IDLE",
    InstructionKind.X_ERROR: "XERR",
    InstructionKind.DEPOLARIZE1: "DEP1",
    InstructionKind.DEPOLARIZE2: "DEP2",
}


class Instruction(BaseModel):
    """One circuit instruction."""
    model_config = ConfigDict(frozen=True)

    kind: InstructionKind
    qubits: tuple[int, ...] = ()
    record_index: Optional[int] = None
    probability: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def check_shape(self) -> "Instruction":
        kind = self.kind
        n = len(self.qubits)
        if kind == InstructionKind.LAYER_BOUNDARY and n:
            raise ValueError("layer_boundary takes no qubits")
        if kind in (InstructionKind.GATE_CX, InstructionKind.DEPOLARIZE2):
            if n != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"{kind.value} needs two distinct qubits")
        elif kind in SINGLE_QUBIT_GATES or kind in (
            InstructionKind.PREP_Z,
            InstructionKind.MEASURE_Z,
            InstructionKind.X_ERROR,
            InstructionKind.DEPOLARIZE1,
        ):
            if n != 1:
                raise ValueError(f"{kind.value} needs exactly one qubit")
        if (self.record_index is not None) != (kind == InstructionKind.MEASURE_Z):
            raise ValueError("record_index is present iff kind is measure_z")
        if (self.probability is not None) != (kind in CHANNELS):
            raise ValueError("probability is present iff kind is a noise channel")
        return self

    def to_text(self) -> str:
        opcode = TEXT_OPCODES[self.kind]
        if self.kind in CHANNELS:
            opcode = f"{opcode}({self.probability:.10g})"
        parts = [opcode, *(str(q) for q in self.qubits)]
        if self.record_index is not None:
            parts.append(f"#{self.record_index}")
        return " ".join(parts)


class RecordTag(BaseModel):
    """Origin of a measurement record: 1-based round, link id and 1-based instance."""
    model_config = ConfigDict(frozen=True)

    round: int = Field(..., ge=1)
    link_id: int = Field(..., ge=0)
    instance: int = Field(..., ge=1)


class Circuit(BaseModel):
    """An immutable instruction list with measurement-record bookkeeping."""
    model_config = ConfigDict(frozen=True)

    layout: Layout
    instructions: tuple[Instruction, ...]
    num_records: int = Field(..., ge=0)
    tags: dict[int, RecordTag] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_records(self) -> "Circuit":
        seen = [i.record_index for i in self.instructions if i.kind == InstructionKind.MEASURE_Z]
        if seen != list(range(len(seen))) or len(seen) != self.num_records:
            raise ValueError("record indices must be consecutive from 0 in program order")
        if self.tags and set(self.tags) != set(seen):
            raise ValueError("record tags must cover every measurement exactly once")
        return self

    @property
    def qubits(self) -> list[int]:
        """Every qubit touched by a non-marker instruction, ascending."""
        used: set[int] = set()
        for instruction in self.instructions:
            if instruction.kind not in MARKERS:
                used.update(instruction.qubits)
        return sorted(used)

    def count(self, kind: InstructionKind) -> int:
        return sum(1 for i in self.instructions if i.kind == kind)

    def layers(self) -> list[list[Instruction]]:
        """Instructions split at layer boundaries (boundaries excluded)."""
        layers: list[list[Instruction]] = [[]]
        for instruction in self.instructions:
            if instruction.kind == InstructionKind.LAYER_BOUNDARY:
                layers.append([])
            else:
                layers[-1].append(instruction)
        if not layers[-1]:
            layers.pop()
        return layers

    def records_of_link(self, link_id: int) -> list[int]:
        """Record indices of one link ordered by instance."""
        found = [(tag.instance, index) for index, tag in self.tags.items() if tag.link_id == link_id]
        return [index for _, index in sorted(found)]

    def to_text(self) -> str:
        """Line-oriented export; record tags become trailing comments."""
        lines = []
        for instruction in self.instructions:
            line = instruction.to_text()
            if instruction.record_index is not None and instruction.record_index in self.tags:
                tag = self.tags[instruction.record_index]
                line += f" // round={tag.round} link={tag.link_id} instance={tag.instance}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> str:
        """SHA-256 of the text export; identifies a circuit in shot files and logs."""
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()
