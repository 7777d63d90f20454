"""
Circuit service.
Builds link-measurement subcircuits and compiles round schedules into layered circuits.

Layer structure (up to three rounds per layer):
- idle window over every code and auxiliary qubit
- gate part of every link subcircuit, round by round, links in ascending id
- measurement phase: idle window over the qubits not measured in this layer,
  then the layer's measurements in round order
- layer boundary
"""
from typing import Iterable, Optional, Sequence

from pydantic import ValidationError

from hexfloquet.core.errors import CircuitError
from hexfloquet.core.logging import event_log
from hexfloquet.models.circuit import Circuit, Instruction, InstructionKind, RecordTag
from hexfloquet.models.codes import RoundBasis, RoundSpec
from hexfloquet.models.lattice import Layout, Link, PauliType

ROUNDS_PER_LAYER = 3

# Conjugations mapping the measured Pauli onto Z, in time order.
_BASIS_CHANGE = {
    PauliType.X: ([InstructionKind.GATE_H], [InstructionKind.GATE_H]),
    PauliType.Y: ([InstructionKind.GATE_SDG, InstructionKind.GATE_H], [InstructionKind.GATE_H, InstructionKind.GATE_S]),
    PauliType.Z: ([], []),
}


def _basis_type(basis) -> PauliType:
    try:
        return PauliType(basis.value if hasattr(basis, "value") else str(basis))
    except ValueError:
        raise CircuitError(f"cannot measure a link in basis {basis!r}") from None


def link_gate_part(link: Link, basis: PauliType, reset_aux: bool) -> list[Instruction]:
    """Everything in a link subcircuit before the measurement."""
    v1, v2 = link.endpoints
    before, after = _BASIS_CHANGE[basis]
    ops: list[Instruction] = []
    if reset_aux:
        ops.append(Instruction(kind=InstructionKind.PREP_Z, qubits=(link.aux,)))
    for kind in before:
        ops.extend(Instruction(kind=kind, qubits=(v,)) for v in (v1, v2))
    ops.append(Instruction(kind=InstructionKind.GATE_CX, qubits=(v1, link.aux)))
    ops.append(Instruction(kind=InstructionKind.GATE_CX, qubits=(v2, link.aux)))
    for kind in after:
        ops.extend(Instruction(kind=kind, qubits=(v,)) for v in (v1, v2))
    return ops


def link_measurement_subcircuit(
    link: Link,
    basis,
    reset_aux: bool,
    record_index: int = 0,
) -> list[Instruction]:
    """
    Measure sigma^basis (x) sigma^basis on the link endpoints onto the aux qubit.

    Without reset the aux keeps its previous outcome, so the recorded bit is the
    XOR of every parity measured on that aux so far.
    """
    pauli = _basis_type(basis)
    ops = link_gate_part(link, pauli, reset_aux)
    ops.append(Instruction(kind=InstructionKind.MEASURE_Z, qubits=(link.aux,), record_index=record_index))
    return ops


class CircuitBuilder:
    """Accumulates instructions, numbering records and checking couplings."""

    def __init__(self, layout: Layout):
        self.layout = layout
        self.instructions: list[Instruction] = []
        self.tags: dict[int, RecordTag] = {}
        self._instances: dict[int, int] = {}
        self._next_record = 0

    def append(self, instruction: Instruction) -> None:
        if instruction.kind == InstructionKind.GATE_CX and not self.layout.coupled(*instruction.qubits):
            a, b = instruction.qubits
            raise CircuitError(f"CX {a} {b} is not in the coupling of layout {self.layout.name}")
        self.instructions.append(instruction)

    def extend(self, instructions: Iterable[Instruction]) -> None:
        for instruction in instructions:
            self.append(instruction)

    def measure(self, qubit: int, round_number: Optional[int] = None, link_id: Optional[int] = None) -> int:
        """Append a measure_z with the next record index; tag it when it belongs to a link."""
        index = self._next_record
        self.append(Instruction(kind=InstructionKind.MEASURE_Z, qubits=(qubit,), record_index=index))
        if link_id is not None:
            instance = self._instances.get(link_id, 0) + 1
            self._instances[link_id] = instance
            self.tags[index] = RecordTag(round=round_number, link_id=link_id, instance=instance)
        self._next_record += 1
        return index

    def idle(self, qubits: Iterable[int]) -> None:
        self.append(Instruction(kind=InstructionKind.IDLE_WINDOW, qubits=tuple(sorted(qubits))))

    def boundary(self) -> None:
        self.append(Instruction(kind=InstructionKind.LAYER_BOUNDARY))

    def build(self) -> Circuit:
        try:
            return Circuit(
                layout=self.layout,
                instructions=tuple(self.instructions),
                num_records=self._next_record,
                tags=dict(self.tags),
            )
        except ValidationError as e:
            raise CircuitError(f"invalid circuit: {e}") from e


def assemble_circuit(layout: Layout, instructions: Sequence[Instruction]) -> Circuit:
    """
    Circuit from a hand-written instruction list.
    measure_z record indices are renumbered in program order; no tags are attached.
    """
    builder = CircuitBuilder(layout)
    for instruction in instructions:
        if instruction.kind == InstructionKind.MEASURE_Z:
            builder.measure(instruction.qubits[0])
        else:
            builder.append(instruction)
    return builder.build()


def _round_links(layout: Layout, spec: RoundSpec, number: int, allow_empty_rounds: bool) -> list[Link]:
    links = layout.links_of_color(spec.color)
    if not links and not allow_empty_rounds:
        raise CircuitError(f"round {number} measures {spec.color.value} links, but layout {layout.name} has none")
    return links


def schedule_rounds(
    layout: Layout,
    rounds: Sequence[RoundSpec],
    reset_aux: bool,
    allow_empty_rounds: bool = False,
) -> Circuit:
    """Compile a round schedule into a layered circuit with tagged records."""
    if not rounds:
        raise CircuitError("a schedule needs at least one round")

    builder = CircuitBuilder(layout)
    active = layout.active_qubits
    initial = layout.code_qubits if reset_aux else active
    builder.extend(Instruction(kind=InstructionKind.PREP_Z, qubits=(q,)) for q in initial)

    numbered = list(enumerate(rounds, start=1))
    for start in range(0, len(numbered), ROUNDS_PER_LAYER):
        layer = numbered[start:start + ROUNDS_PER_LAYER]
        colors = [spec.color for _, spec in layer]
        if len(set(colors)) != len(colors):
            raise CircuitError(f"rounds {layer[0][0]}-{layer[-1][0]} share a layer but repeat a color")

        builder.idle(active)
        measured: list[tuple[int, Link]] = []
        for number, spec in layer:
            for link in _round_links(layout, spec, number, allow_empty_rounds):
                basis = link.pauli_type if spec.basis == RoundBasis.NATIVE else _basis_type(spec.basis)
                builder.extend(link_gate_part(link, basis, reset_aux))
                measured.append((number, link))

        measured_aux = {link.aux for _, link in measured}
        builder.idle(q for q in active if q not in measured_aux)
        for number, link in measured:
            builder.measure(link.aux, round_number=number, link_id=link.id)
        builder.boundary()

    circuit = builder.build()
    event_log.log_circuit_scheduled(
        layout.name, len(rounds), reset_aux, len(circuit.instructions), circuit.num_records
    )
    return circuit


def record_index_of(circuit: Circuit) -> dict[tuple[int, int], int]:
    """(round, link_id) -> record index."""
    return {(tag.round, tag.link_id): index for index, tag in circuit.tags.items()}
