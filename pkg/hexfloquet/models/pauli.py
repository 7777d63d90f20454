"""
Sparse Pauli strings over physical qubit ids.
"""
from pydantic import BaseModel, ConfigDict


class PauliString(BaseModel):
    """
    A Pauli operator up to phase, stored as the supports of its X and Z parts.
    Y on a qubit means the qubit is in both supports.
    """
    model_config = ConfigDict(frozen=True)

    x: frozenset[int] = frozenset()
    z: frozenset[int] = frozenset()

    @classmethod
    def from_map(cls, paulis: dict[int, str]) -> "PauliString":
        xs, zs = set(), set()
        for qubit, p in paulis.items():
            p = p.lower()
            if p in ("x", "y"):
                xs.add(qubit)
            if p in ("z", "y"):
                zs.add(qubit)
            if p not in ("x", "y", "z", "i"):
                raise ValueError(f"not a Pauli: {p!r}")
        return cls(x=frozenset(xs), z=frozenset(zs))

    def pauli_on(self, qubit: int) -> str:
        in_x, in_z = qubit in self.x, qubit in self.z
        return {(False, False): "i", (True, False): "x", (True, True): "y", (False, True): "z"}[(in_x, in_z)]

    @property
    def support(self) -> frozenset[int]:
        return self.x | self.z

    def commutes(self, other: "PauliString") -> bool:
        """Symplectic product is zero."""
        return (len(self.x & other.z) + len(self.z & other.x)) % 2 == 0

    def __mul__(self, other: "PauliString") -> "PauliString":
        return PauliString(x=self.x ^ other.x, z=self.z ^ other.z)

    def __str__(self) -> str:
        if not self.support:
            return "I"
        return " ".join(f"{self.pauli_on(q).upper()}{q}" for q in sorted(self.support))
