"""
Code schedule and detector models.
"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from hexfloquet.models.lattice import Color


class CodeFamily(str, Enum):
    """Supported Floquet codes."""
    HONEYCOMB = "honeycomb"
    COLOR = "color"


class RoundBasis(str, Enum):
    """
    Basis of one measurement round.
    NATIVE measures every link in its own pauli_type (honeycomb);
    X and Z apply one basis to every link of the round (Color code).
    """
    NATIVE = "native"
    X = "x"
    Y = "y"
    Z = "z"

    def flipped(self) -> "RoundBasis":
        if self == RoundBasis.X:
            return RoundBasis.Z
        if self == RoundBasis.Z:
            return RoundBasis.X
        raise ValueError(f"basis {self.value} has no complement")


class RoundSpec(BaseModel):
    """Color and basis of one round of link measurements."""
    model_config = ConfigDict(frozen=True)

    color: Color
    basis: RoundBasis = RoundBasis.NATIVE

    def label(self) -> str:
        if self.basis == RoundBasis.NATIVE:
            return self.color.short
        return f"({self.color.short},{self.basis.value})"


class PlaquetteEval(BaseModel):
    """Records whose XOR equals one inferred plaquette-operator outcome."""
    model_config = ConfigDict(frozen=True)

    plaquette_id: int
    color: Color
    basis: RoundBasis
    rounds: tuple[int, ...]
    records: frozenset[int]


class Detector(BaseModel):
    """A parity of measurement records that is always 0 without faults."""
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0)
    plaquette_id: int
    color: Color
    basis: RoundBasis
    rounds: tuple[int, int] = Field(..., description="first round of each compared evaluation")
    records: tuple[int, ...]

    def to_line(self) -> str:
        records = ",".join(str(r) for r in self.records)
        return f"D{self.id} plaquette={self.plaquette_id} basis={self.basis.value} records={records}"
