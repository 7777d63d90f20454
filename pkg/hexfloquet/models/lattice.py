"""
Heavy-hexagon layout models.
A layout is immutable once built and may be shared between threads.
"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator


class QubitRole(str, Enum):
    """Role of a physical qubit in a layout."""
    CODE = "code"
    AUXILIARY = "auxiliary"
    UNUSED = "unused"


class Color(str, Enum):
    """Tri-coloring label of plaquettes, links and rounds."""
    RED = "red"
    GREEN = "green"
    BLUE = "blue"

    @property
    def short(self) -> str:
        return self.value[0].upper()

    @classmethod
    def parse(cls, text: str) -> "Color":
        """Accept full names or the single-letter forms R/G/B."""
        lowered = text.strip().lower()
        for color in cls:
            if lowered in (color.value, color.value[0]):
                return color
        raise ValueError(f"unknown color: {text!r}")


class PauliType(str, Enum):
    """Orientation label of a link; also the Pauli of its native operator."""
    X = "x"
    Y = "y"
    Z = "z"


class Link(BaseModel):
    """A lattice edge: two code-qubit endpoints joined through one auxiliary qubit."""
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0)
    pauli_type: PauliType
    color: Color
    endpoints: tuple[int, int]
    aux: int

    @field_validator("endpoints")
    @classmethod
    def distinct_endpoints(cls, v: tuple[int, int]) -> tuple[int, int]:
        if v[0] == v[1]:
            raise ValueError("link endpoints must differ")
        return v


class Plaquette(BaseModel):
    """
    A hexagonal plaquette.

    vertices run clockwise from the top-left vertex; boundary[i] is the link
    joining vertices[i] and vertices[(i + 1) % 6].
    """
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0)
    color: Color
    vertices: tuple[int, ...]
    boundary: tuple[int, ...]


class Layout(BaseModel):
    """Qubit roles, colored links and plaquettes, and physical coupling of one device or patch."""
    model_config = ConfigDict(frozen=True)

    name: str
    qubits: dict[int, QubitRole]
    links: tuple[Link, ...]
    plaquettes: tuple[Plaquette, ...]
    coupling: frozenset[tuple[int, int]]

    @property
    def link_index(self) -> dict[int, Link]:
        return {link.id: link for link in self.links}

    @property
    def plaquette_index(self) -> dict[int, Plaquette]:
        return {plaquette.id: plaquette for plaquette in self.plaquettes}

    def link(self, link_id: int) -> Link:
        return self.link_index[link_id]

    def plaquette(self, plaquette_id: int) -> Plaquette:
        return self.plaquette_index[plaquette_id]

    def links_of_color(self, color: Color) -> list[Link]:
        """Links of one color in ascending id order."""
        return sorted((l for l in self.links if l.color == color), key=lambda l: l.id)

    def plaquettes_of_color(self, color: Color) -> list[Plaquette]:
        return [p for p in self.plaquettes if p.color == color]

    def qubits_with_role(self, role: QubitRole) -> list[int]:
        return sorted(q for q, r in self.qubits.items() if r == role)

    @property
    def code_qubits(self) -> list[int]:
        return self.qubits_with_role(QubitRole.CODE)

    @property
    def aux_qubits(self) -> list[int]:
        return self.qubits_with_role(QubitRole.AUXILIARY)

    @property
    def active_qubits(self) -> list[int]:
        """Code and auxiliary qubits, ascending."""
        return sorted(q for q, r in self.qubits.items() if r != QubitRole.UNUSED)

    def coupled(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.coupling
