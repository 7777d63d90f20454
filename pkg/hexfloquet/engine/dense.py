"""
Dense state-vector oracle for small circuits.
Consumes the same per-shot draws as the frame sampler: channels decode their
draw identically, measurements return 1 when the draw is below P(1).
"""
import numpy as np

from hexfloquet.engine.program import (
    OP_CX,
    OP_DEPOLARIZE1,
    OP_DEPOLARIZE2,
    OP_H,
    OP_MEASURE,
    OP_PREP,
    OP_S,
    OP_SDG,
    OP_X,
    OP_X_ERROR,
    Program,
    depolarize1_pauli,
    depolarize2_paulis,
)

_TOLERANCE = 1e-12

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)
_SDG = np.array([[1, 0], [0, -1j]], dtype=np.complex128)


class DenseState:
    """n-qubit state vector stored with one axis per qubit."""

    def __init__(self, n: int):
        self.n = n
        self.psi = np.zeros((2,) * n, dtype=np.complex128)
        self.psi[(0,) * n] = 1.0

    def _index(self, q: int, value: int) -> tuple:
        index = [slice(None)] * self.n
        index[q] = value
        return tuple(index)

    def apply1(self, matrix: np.ndarray, q: int) -> None:
        self.psi = np.moveaxis(np.tensordot(matrix, self.psi, axes=([1], [q])), 0, q)

    def x(self, q: int) -> None:
        self.psi = np.flip(self.psi, axis=q).copy()

    def z(self, q: int) -> None:
        self.psi[self._index(q, 1)] *= -1

    def pauli(self, q: int, code: int) -> None:
        """1 X, 2 Y, 3 Z; Y is applied up to global phase."""
        if code in (2, 3):
            self.z(q)
        if code in (1, 2):
            self.x(q)

    def cx(self, control: int, target: int) -> None:
        index = self._index(control, 1)
        axis = target if target < control else target - 1
        self.psi[index] = np.flip(self.psi[index], axis=axis).copy()

    def probability_one(self, q: int) -> float:
        return float(np.sum(np.abs(self.psi[self._index(q, 1)]) ** 2))

    def measure(self, q: int, u: float) -> int:
        p1 = self.probability_one(q)
        if p1 < _TOLERANCE:
            outcome = 0
        elif p1 > 1.0 - _TOLERANCE:
            outcome = 1
        else:
            outcome = int(u < p1)
        self.psi[self._index(q, 1 - outcome)] = 0.0
        norm = np.sqrt(p1 if outcome else 1.0 - p1)
        self.psi /= norm
        return outcome

    def reset(self, q: int, u: float) -> None:
        if self.measure(q, u):
            self.x(q)


def run_dense(program: Program, draws: np.ndarray) -> np.ndarray:
    """One shot on the dense state; draws is this shot's draw vector."""
    state = DenseState(program.num_qubits)
    records = np.zeros(program.num_records, dtype=np.uint8)
    for op in program.ops:
        code = op.code
        if code == OP_PREP:
            state.reset(op.a, draws[op.draw])
        elif code == OP_H:
            state.apply1(_H, op.a)
        elif code == OP_S:
            state.apply1(_S, op.a)
        elif code == OP_SDG:
            state.apply1(_SDG, op.a)
        elif code == OP_X:
            state.x(op.a)
        elif code == OP_CX:
            state.cx(op.a, op.b)
        elif code == OP_MEASURE:
            records[op.record] = state.measure(op.a, draws[op.draw])
        elif code == OP_X_ERROR:
            if draws[op.draw] < op.p:
                state.x(op.a)
        elif code == OP_DEPOLARIZE1:
            state.pauli(op.a, depolarize1_pauli(draws[op.draw], op.p))
        elif code == OP_DEPOLARIZE2:
            first, second = depolarize2_paulis(draws[op.draw], op.p)
            state.pauli(op.a, first)
            state.pauli(op.b, second)
    return records
