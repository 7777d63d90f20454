"""
Compiled form of a circuit shared by every engine.

Qubit ids are mapped to dense indices (ascending id order). Each shot consumes
a fixed number of uniform draws:
- one per qubit at start (Pauli-frame randomization)
- one per prep_z, measure_z and noise channel, in program order
"""
from dataclasses import dataclass, field

from hexfloquet.core.errors import SimulationError
from hexfloquet.models.circuit import Circuit, InstructionKind

OP_PREP = 0
OP_H = 1
OP_S = 2
OP_SDG = 3
OP_X = 4
OP_CX = 5
OP_MEASURE = 6
OP_X_ERROR = 7
OP_DEPOLARIZE1 = 8
OP_DEPOLARIZE2 = 9

_OPCODES = {
    InstructionKind.PREP_Z: OP_PREP,
    InstructionKind.GATE_H: OP_H,
    InstructionKind.GATE_S: OP_S,
    InstructionKind.GATE_SDG: OP_SDG,
    InstructionKind.GATE_X: OP_X,
    InstructionKind.GATE_CX: OP_CX,
    InstructionKind.MEASURE_Z: OP_MEASURE,
    InstructionKind.X_ERROR: OP_X_ERROR,
    InstructionKind.DEPOLARIZE1: OP_DEPOLARIZE1,
    InstructionKind.DEPOLARIZE2: OP_DEPOLARIZE2,
}

_MARKERS = {InstructionKind.LAYER_BOUNDARY, InstructionKind.IDLE_WINDOW}

_DRAWS = {OP_PREP, OP_MEASURE, OP_X_ERROR, OP_DEPOLARIZE1, OP_DEPOLARIZE2}


@dataclass(frozen=True)
class Op:
    """One executable step. b is -1 for single-qubit ops; draw and record are -1 when unused."""
    code: int
    a: int
    b: int = -1
    draw: int = -1
    record: int = -1
    p: float = 0.0


@dataclass(frozen=True)
class Program:
    num_qubits: int
    num_records: int
    num_draws: int
    ops: tuple[Op, ...]
    qubit_ids: tuple[int, ...] = field(default=())


def compile_circuit(circuit: Circuit) -> Program:
    """Lower a circuit to engine ops; raises SimulationError on anything non-Clifford."""
    qubit_ids = tuple(circuit.qubits)
    index = {q: i for i, q in enumerate(qubit_ids)}
    n = len(qubit_ids)
    draw = n
    ops = []
    for instruction in circuit.instructions:
        if instruction.kind in _MARKERS:
            continue
        code = _OPCODES.get(instruction.kind)
        if code is None:
            raise SimulationError(f"instruction {instruction.kind!r} is not a Clifford operation")
        a = index[instruction.qubits[0]]
        b = index[instruction.qubits[1]] if len(instruction.qubits) > 1 else -1
        op_draw = -1
        if code in _DRAWS:
            op_draw = draw
            draw += 1
        record = instruction.record_index if code == OP_MEASURE else -1
        ops.append(Op(code=code, a=a, b=b, draw=op_draw, record=record, p=instruction.probability or 0.0))
    return Program(
        num_qubits=n,
        num_records=circuit.num_records,
        num_draws=draw,
        ops=tuple(ops),
        qubit_ids=qubit_ids,
    )


def depolarize1_pauli(u: float, p: float) -> int:
    """Pauli code for a one-qubit depolarizing draw: 0 none, 1 X, 2 Y, 3 Z."""
    if u >= p:
        return 0
    return min(int(u * 3 / p), 2) + 1


def depolarize2_paulis(u: float, p: float) -> tuple[int, int]:
    """Pauli codes on both qubits for a two-qubit depolarizing draw (15 non-identity pairs)."""
    if u >= p:
        return 0, 0
    k = min(int(u * 15 / p), 14) + 1
    return k >> 2, k & 3
