"""
Bit-packed stabilizer tableau (Aaronson-Gottesman).

Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers, row 2n is scratch.
X and Z parts are packed 64 qubits per uint64 word; signs are one byte per row.
"""
from typing import Callable, Optional

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

_ONE = np.uint64(1)


class TableauState:
    """Stabilizer state of n qubits, initially |0...0>."""

    def __init__(self, n: int):
        self.n = n
        self.words = max(1, (n + 63) // 64)
        rows = 2 * n + 1
        self.x = np.zeros((rows, self.words), dtype=np.uint64)
        self.z = np.zeros((rows, self.words), dtype=np.uint64)
        self.r = np.zeros(rows, dtype=np.uint8)
        for q in range(n):
            w, m = self._locate(q)
            self.x[q, w] |= m
            self.z[n + q, w] |= m

    @staticmethod
    def _locate(q: int) -> tuple[int, np.uint64]:
        return q >> 6, _ONE << np.uint64(q & 63)

    def _column(self, part: np.ndarray, q: int) -> np.ndarray:
        w, m = self._locate(q)
        return (part[:, w] & m) != 0

    # ---- Clifford gates ----

    def h(self, q: int) -> None:
        w, m = self._locate(q)
        xq, zq = self._column(self.x, q), self._column(self.z, q)
        self.r ^= (xq & zq).astype(np.uint8)
        differ = xq ^ zq
        self.x[differ, w] ^= m
        self.z[differ, w] ^= m

    def s(self, q: int) -> None:
        w, m = self._locate(q)
        xq, zq = self._column(self.x, q), self._column(self.z, q)
        self.r ^= (xq & zq).astype(np.uint8)
        self.z[xq, w] ^= m

    def sdg(self, q: int) -> None:
        w, m = self._locate(q)
        xq, zq = self._column(self.x, q), self._column(self.z, q)
        self.r ^= (xq & ~zq).astype(np.uint8)
        self.z[xq, w] ^= m

    def x_gate(self, q: int) -> None:
        self.r ^= self._column(self.z, q).astype(np.uint8)

    def z_gate(self, q: int) -> None:
        self.r ^= self._column(self.x, q).astype(np.uint8)

    def y_gate(self, q: int) -> None:
        self.r ^= (self._column(self.x, q) ^ self._column(self.z, q)).astype(np.uint8)

    def pauli(self, q: int, code: int) -> None:
        """Apply Pauli code 1 X, 2 Y, 3 Z (0 is identity)."""
        if code == 1:
            self.x_gate(q)
        elif code == 2:
            self.y_gate(q)
        elif code == 3:
            self.z_gate(q)

    def cx(self, control: int, target: int) -> None:
        wc, mc = self._locate(control)
        wt, mt = self._locate(target)
        xc, zc = self._column(self.x, control), self._column(self.z, control)
        xt, zt = self._column(self.x, target), self._column(self.z, target)
        self.r ^= (xc & zt & ~(xt ^ zc)).astype(np.uint8)
        self.x[xc, wt] ^= mt
        self.z[zt, wc] ^= mc

    # ---- Measurement ----

    def _rowsum(self, targets: np.ndarray, source: int) -> None:
        """Multiply row `source` into each target row, tracking the sign."""
        x1, z1 = self.x[source], self.z[source]
        x2, z2 = self.x[targets], self.z[targets]
        plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2)
        minus = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2)
        g = np.bitwise_count(plus).sum(axis=1, dtype=np.int64) - np.bitwise_count(minus).sum(axis=1, dtype=np.int64)
        total = 2 * self.r[targets].astype(np.int64) + 2 * int(self.r[source]) + g
        self.r[targets] = (np.mod(total, 4) == 2).astype(np.uint8)
        self.x[targets] ^= x1
        self.z[targets] ^= z1

    def is_deterministic(self, q: int) -> bool:
        return not self._column(self.x, q)[self.n:2 * self.n].any()

    def measure(self, q: int, random_outcome: Callable[[], int] = lambda: 0) -> tuple[int, bool]:
        """
        Z measurement of qubit q. Returns (outcome, was_random); random outcomes
        come from random_outcome().
        """
        n = self.n
        xq = self._column(self.x, q)
        hits = np.flatnonzero(xq[n:2 * n])
        if hits.size:
            p = n + int(hits[0])
            others = np.flatnonzero(xq[:2 * n])
            others = others[others != p]
            if others.size:
                self._rowsum(others, p)
            self.x[p - n] = self.x[p]
            self.z[p - n] = self.z[p]
            self.r[p - n] = self.r[p]
            w, m = self._locate(q)
            self.x[p] = 0
            self.z[p] = 0
            self.z[p, w] = m
            outcome = int(random_outcome()) & 1
            self.r[p] = outcome
            return outcome, True

        scratch = 2 * n
        self.x[scratch] = 0
        self.z[scratch] = 0
        self.r[scratch] = 0
        for i in np.flatnonzero(xq[:n]):
            self._rowsum(np.array([scratch]), int(i) + n)
        return int(self.r[scratch]), False

    def reset(self, q: int, random_outcome: Callable[[], int] = lambda: 0) -> None:
        outcome, _ = self.measure(q, random_outcome)
        if outcome:
            self.x_gate(q)

    # ---- Inspection ----

    def _bits(self, part: np.ndarray) -> np.ndarray:
        """Unpacked (2n, n) 0/1 matrix of one part."""
        rows = part[:2 * self.n]
        return np.stack([self._column(rows, q) for q in range(self.n)], axis=1).astype(np.int64) if self.n else np.zeros((0, 0), np.int64)

    def is_valid(self) -> bool:
        """Generators form a symplectic basis: destabilizer i anticommutes only with stabilizer i."""
        n = self.n
        xs, zs = self._bits(self.x), self._bits(self.z)
        products = (xs @ zs.T + zs @ xs.T) % 2
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        expected[:n, n:] = np.eye(n, dtype=np.int64)
        expected[n:, :n] = np.eye(n, dtype=np.int64)
        return bool(np.array_equal(products, expected))

    def stabilizer_strings(self) -> list[str]:
        """Stabilizer generators as signed strings such as '+XZ_'."""
        xs, zs = self._bits(self.x), self._bits(self.z)
        out = []
        for row in range(self.n, 2 * self.n):
            chars = "".join("_XZY"[xs[row, q] + 2 * zs[row, q]] for q in range(self.n))
            out.append(("-" if self.r[row] else "+") + chars)
        return out


def reference_sample(program: Program) -> np.ndarray:
    """Noiseless records with every random outcome fixed to 0."""
    state = TableauState(program.num_qubits)
    records = np.zeros(program.num_records, dtype=np.uint8)
    for op in program.ops:
        code = op.code
        if code == OP_PREP:
            state.reset(op.a)
        elif code == OP_H:
            state.h(op.a)
        elif code == OP_S:
            state.s(op.a)
        elif code == OP_SDG:
            state.sdg(op.a)
        elif code == OP_X:
            state.x_gate(op.a)
        elif code == OP_CX:
            state.cx(op.a, op.b)
        elif code == OP_MEASURE:
            records[op.record], _ = state.measure(op.a)
    return records


def run_direct(program: Program, draws: np.ndarray, state: Optional[TableauState] = None) -> np.ndarray:
    """
    One shot executed entirely on a tableau; draws is this shot's draw vector.
    Random outcomes use the op's draw (outcome 1 when u < 1/2).
    """
    state = state or TableauState(program.num_qubits)
    records = np.zeros(program.num_records, dtype=np.uint8)
    for op in program.ops:
        code = op.code
        if code == OP_PREP:
            state.reset(op.a, lambda: draws[op.draw] < 0.5)
        elif code == OP_H:
            state.h(op.a)
        elif code == OP_S:
            state.s(op.a)
        elif code == OP_SDG:
            state.sdg(op.a)
        elif code == OP_X:
            state.x_gate(op.a)
        elif code == OP_CX:
            state.cx(op.a, op.b)
        elif code == OP_MEASURE:
            records[op.record], _ = state.measure(op.a, lambda: draws[op.draw] < 0.5)
        elif code == OP_X_ERROR:
            if draws[op.draw] < op.p:
                state.x_gate(op.a)
        elif code == OP_DEPOLARIZE1:
            state.pauli(op.a, depolarize1_pauli(draws[op.draw], op.p))
        elif code == OP_DEPOLARIZE2:
            first, second = depolarize2_paulis(draws[op.draw], op.p)
            state.pauli(op.a, first)
            state.pauli(op.b, second)
    return records
