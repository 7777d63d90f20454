"""
Batched Pauli-frame sampler.

A frame is the Pauli difference between a sampled shot and the noiseless
reference sample. Frames of a batch are stored as (qubits, shots) boolean
arrays; measurement results are the reference bits flipped by the frame's
X part. Z parts are randomized at start, after every reset and after every
measurement, which reproduces the statistics of random measurement outcomes.
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
)


def _pauli_parts(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Codes 1 X, 2 Y, 3 Z to (x, z) flip masks."""
    return (k == 1) | (k == 2), (k == 2) | (k == 3)


class FrameSampler:
    """Propagates Pauli frames of many shots through one program."""

    def __init__(self, program: Program, reference: np.ndarray):
        self.program = program
        self.reference = reference.astype(bool)

    def sample(self, draws: np.ndarray) -> np.ndarray:
        """
        draws: (num_draws, shots) uniforms, one column per shot.
        Returns (shots, num_records) uint8 outcomes.
        """
        program = self.program
        shots = draws.shape[1]
        x = np.zeros((program.num_qubits, shots), dtype=bool)
        z = draws[:program.num_qubits] < 0.5
        out = np.zeros((program.num_records, shots), dtype=bool)

        for op in program.ops:
            code, a = op.code, op.a
            if code == OP_CX:
                x[op.b] ^= x[a]
                z[a] ^= z[op.b]
            elif code == OP_H:
                x[a], z[a] = z[a].copy(), x[a].copy()
            elif code == OP_S or code == OP_SDG:
                z[a] ^= x[a]
            elif code == OP_MEASURE:
                out[op.record] = x[a] ^ self.reference[op.record]
                z[a] ^= draws[op.draw] < 0.5
            elif code == OP_PREP:
                x[a] = False
                z[a] = draws[op.draw] < 0.5
            elif code == OP_X_ERROR:
                if op.p > 0.0:
                    x[a] ^= draws[op.draw] < op.p
            elif code == OP_DEPOLARIZE1:
                if op.p > 0.0:
                    u = draws[op.draw]
                    hit = u < op.p
                    k = np.where(hit, np.minimum((u * 3 / op.p).astype(np.int64), 2) + 1, 0)
                    fx, fz = _pauli_parts(k)
                    x[a] ^= fx
                    z[a] ^= fz
            elif code == OP_DEPOLARIZE2:
                if op.p > 0.0:
                    u = draws[op.draw]
                    hit = u < op.p
                    k = np.where(hit, np.minimum((u * 15 / op.p).astype(np.int64), 14) + 1, 0)
                    ax, az = _pauli_parts(k >> 2)
                    bx, bz = _pauli_parts(k & 3)
                    x[a] ^= ax
                    z[a] ^= az
                    x[op.b] ^= bx
                    z[op.b] ^= bz
            elif code == OP_X:
                pass
        return np.ascontiguousarray(out.T).astype(np.uint8)
