"""
Noise service.
Inserts circuit-level Pauli channels and extrapolates idle errors across timescales.
"""
from collections import Counter

from hexfloquet.core.errors import NoiseError
from hexfloquet.core.logging import event_log
from hexfloquet.models.circuit import CHANNELS, Circuit, Instruction, InstructionKind
from hexfloquet.models.noise import NoiseModel

MAX_DEPOLARIZING = 0.75


def _channel(kind: InstructionKind, qubits: tuple[int, ...], p: float) -> Instruction:
    return Instruction(kind=kind, qubits=qubits, probability=p)


def apply_noise(circuit: Circuit, model: NoiseModel) -> Circuit:
    """
    Copy of the circuit with channels inserted; original instruction order is kept.

    - X flip (p_prep) after every prep_z
    - X flip (p_meas) before every measure_z
    - two-qubit depolarizing (p_cx) after every CX
    - one-qubit depolarizing (p_idle) on every qubit of every idle window
    Zero probabilities still insert (inert) channels.
    """
    noisy: list[Instruction] = []
    for instruction in circuit.instructions:
        kind = instruction.kind
        if kind == InstructionKind.MEASURE_Z:
            noisy.append(_channel(InstructionKind.X_ERROR, instruction.qubits, model.p_meas))
        noisy.append(instruction)
        if kind == InstructionKind.PREP_Z:
            noisy.append(_channel(InstructionKind.X_ERROR, instruction.qubits, model.p_prep))
        elif kind == InstructionKind.GATE_CX:
            noisy.append(_channel(InstructionKind.DEPOLARIZE2, instruction.qubits, model.p_cx))
        elif kind == InstructionKind.IDLE_WINDOW:
            noisy.extend(_channel(InstructionKind.DEPOLARIZE1, (q,), model.p_idle) for q in instruction.qubits)

    result = circuit.model_copy(update={"instructions": tuple(noisy)})
    event_log.info(
        "noise.applied",
        target_type="layout",
        target_id=circuit.layout.name,
        details={"model": model.model_dump(), "channels": len(noisy) - len(circuit.instructions)},
    )
    return result


def strip_noise(circuit: Circuit) -> Circuit:
    """Copy of the circuit without channel instructions."""
    kept = tuple(i for i in circuit.instructions if i.kind not in CHANNELS)
    return circuit.model_copy(update={"instructions": kept})


def count_channels(circuit: Circuit) -> Counter:
    """Number of channel instructions per kind."""
    return Counter(i.kind for i in circuit.instructions if i.kind in CHANNELS)


def expected_channel_count(circuit: Circuit) -> int:
    """Channels apply_noise inserts: one per prep, measurement and CX, one per idle qubit."""
    total = 0
    for instruction in circuit.instructions:
        if instruction.kind in (InstructionKind.PREP_Z, InstructionKind.MEASURE_Z, InstructionKind.GATE_CX):
            total += 1
        elif instruction.kind == InstructionKind.IDLE_WINDOW:
            total += len(instruction.qubits)
    return total


def idle_extrapolation(p_id: float, t_id: float, t: float) -> float:
    """
    Depolarizing error over duration t given error p_id over t_id.
    p(t) = 3/4 (1 - (1 - 4 p_id / 3) ** (t / t_id))
    """
    if not 0.0 <= p_id <= MAX_DEPOLARIZING:
        raise NoiseError(f"p_id={p_id} is not a valid depolarizing strength (0 <= p <= 3/4)")
    if t_id <= 0:
        raise NoiseError(f"t_id must be positive, got {t_id}")
    if t < 0:
        raise NoiseError(f"t must be non-negative, got {t}")
    return MAX_DEPOLARIZING * (1.0 - (1.0 - p_id / MAX_DEPOLARIZING) ** (t / t_id))
