"""
Code service.
Round schedules and detectors of the honeycomb Floquet code and the Floquet
Color code, plus the Pauli algebra the detectors rest on.

Evaluations are first built from (round, link) terms as if every auxiliary
were reset; without reset the instance-k outcome of a link is the XOR of its
raw records k and k - 1, and the substitution is applied term by term.
"""
from typing import Optional, Sequence

import numpy as np

from hexfloquet.core.config import settings
from hexfloquet.core.errors import CircuitError, ScheduleError, UsageError
from hexfloquet.core.logging import event_log
from hexfloquet.models.circuit import Circuit
from hexfloquet.models.codes import CodeFamily, Detector, PlaquetteEval, RoundBasis, RoundSpec
from hexfloquet.models.lattice import Color, Layout, Link, PauliType, Plaquette
from hexfloquet.models.pauli import PauliString
from hexfloquet.schemas.report_schemas import DetectorFailure, VerificationReport
from hexfloquet.services.circuit_service import record_index_of, schedule_rounds
from hexfloquet.services.noise_service import strip_noise
from hexfloquet.services.simulator_service import run_shots

HONEYCOMB_MIN_ROUNDS = 7
COLOR_CODE_MIN_ROUNDS = 10
DEFAULT_ORDER = (Color.RED, Color.GREEN, Color.BLUE)

Term = tuple[int, int]  # (round, link_id)


# ============ Schedules ============

def parse_order(text: str) -> tuple[Color, ...]:
    """'RGB', 'g,b,r' or 'green blue red' to a color order."""
    cleaned = text.replace(",", " ").split()
    if len(cleaned) == 1 and len(cleaned[0]) == 3:
        cleaned = list(cleaned[0])
    try:
        return tuple(Color.parse(token) for token in cleaned)
    except ValueError as e:
        raise ScheduleError(str(e)) from e


def _check_order(order: Sequence[Color]) -> tuple[Color, ...]:
    order = tuple(order)
    if sorted(c.value for c in order) != sorted(c.value for c in Color):
        raise ScheduleError(f"a color order must use each color once, got {[c.value for c in order]}")
    return order


def honeycomb_schedule(n_rounds: int, order: Optional[Sequence[Color]] = None) -> list[RoundSpec]:
    """Rounds cycling through the color order (red, green, blue by default), native basis."""
    if n_rounds < HONEYCOMB_MIN_ROUNDS:
        raise ScheduleError(f"honeycomb schedules need at least {HONEYCOMB_MIN_ROUNDS} rounds, got {n_rounds}")
    cycle = _check_order(order or DEFAULT_ORDER)
    return [RoundSpec(color=cycle[t % 3], basis=RoundBasis.NATIVE) for t in range(n_rounds)]


def color_code_schedule(
    n_rounds: int,
    start_color: Color = Color.RED,
    start_basis: RoundBasis = RoundBasis.X,
) -> list[RoundSpec]:
    """Colors cycle red, green, blue from start_color while the basis alternates x, z; period 6."""
    if n_rounds < COLOR_CODE_MIN_ROUNDS:
        raise ScheduleError(f"Color-code schedules need at least {COLOR_CODE_MIN_ROUNDS} rounds, got {n_rounds}")
    if start_basis not in (RoundBasis.X, RoundBasis.Z):
        raise ScheduleError(f"Color-code rounds measure in x or z, not {start_basis.value}")
    offset = DEFAULT_ORDER.index(start_color)
    bases = (start_basis, start_basis.flipped())
    return [
        RoundSpec(color=DEFAULT_ORDER[(offset + t) % 3], basis=bases[t % 2])
        for t in range(n_rounds)
    ]


def schedule_for(
    code: CodeFamily,
    n_rounds: int,
    order: Optional[Sequence[Color]] = None,
    start_color: Color = Color.RED,
    start_basis: RoundBasis = RoundBasis.X,
) -> list[RoundSpec]:
    if code == CodeFamily.HONEYCOMB:
        return honeycomb_schedule(n_rounds, order)
    return color_code_schedule(n_rounds, start_color, start_basis)


def _check_family(schedule: Sequence[RoundSpec], code: CodeFamily, minimum: int) -> None:
    if len(schedule) < minimum:
        raise ScheduleError(f"{code.value} detectors need at least {minimum} rounds, got {len(schedule)}")
    for t, spec in enumerate(schedule, start=1):
        if code == CodeFamily.HONEYCOMB and spec.basis != RoundBasis.NATIVE:
            raise ScheduleError(f"round {t}: honeycomb rounds use the native basis, got {spec.basis.value}")
        if code == CodeFamily.COLOR and spec.basis not in (RoundBasis.X, RoundBasis.Z):
            raise ScheduleError(f"round {t}: Color-code rounds use basis x or z, got {spec.basis.value}")


def _circuit(layout: Layout, schedule: Sequence[RoundSpec], reset_aux: bool, allow_empty_rounds: bool) -> Circuit:
    try:
        return schedule_rounds(layout, schedule, reset_aux, allow_empty_rounds)
    except CircuitError as e:
        raise ScheduleError(f"schedule does not fit layout {layout.name}: {e.message}") from e


# ============ Evaluations ============

def _boundary_of_color(layout: Layout, plaquette: Plaquette, color: Color) -> list[Link]:
    return [layout.link(lid) for lid in plaquette.boundary if layout.link(lid).color == color]


def _third_color(a: Color, b: Color) -> Color:
    (third,) = set(Color) - {a, b}
    return third


class _RecordMap:
    """Maps (round, link) terms to raw record sets of one circuit."""

    def __init__(self, circuit: Circuit, reset_aux: bool):
        self.reset_aux = reset_aux
        self.index = record_index_of(circuit)
        self.tags = circuit.tags
        self.by_link: dict[int, list[int]] = {}
        for record, tag in sorted(circuit.tags.items(), key=lambda item: (item[1].link_id, item[1].instance)):
            self.by_link.setdefault(tag.link_id, []).append(record)

    def records(self, terms: set[Term]) -> frozenset[int]:
        out: set[int] = set()
        for term in terms:
            record = self.index[term]
            out ^= {record}
            if not self.reset_aux:
                tag = self.tags[record]
                if tag.instance > 1:
                    out ^= {self.by_link[tag.link_id][tag.instance - 2]}
        return frozenset(out)


def _honeycomb_terms(layout: Layout, schedule: Sequence[RoundSpec]) -> list[tuple[Plaquette, tuple[int, ...], set[Term]]]:
    """Each pair of consecutive rounds of two colors evaluates the plaquettes of the third color."""
    found = []
    for t in range(1, len(schedule)):
        first, second = schedule[t - 1].color, schedule[t].color
        if first == second:
            continue
        for plaquette in layout.plaquettes_of_color(_third_color(first, second)):
            terms = {(t, l.id) for l in _boundary_of_color(layout, plaquette, first)}
            terms |= {(t + 1, l.id) for l in _boundary_of_color(layout, plaquette, second)}
            found.append((plaquette, (t, t + 1), terms))
    return found


def _color_code_terms(layout: Layout, schedule: Sequence[RoundSpec]) -> list[tuple[Plaquette, tuple[int, ...], set[Term], RoundBasis]]:
    """An alpha-round of color c' evaluates W^alpha on every plaquette whose color is not c'."""
    found = []
    for t, spec in enumerate(schedule, start=1):
        for plaquette in layout.plaquettes:
            if plaquette.color == spec.color:
                continue
            terms = {(t, l.id) for l in _boundary_of_color(layout, plaquette, spec.color)}
            found.append((plaquette, (t,), terms, spec.basis))
    return found


def plaquette_evaluations(
    layout: Layout,
    schedule: Sequence[RoundSpec],
    code: CodeFamily,
    reset_aux: bool,
    allow_empty_rounds: bool = False,
) -> list[PlaquetteEval]:
    """Every inferable plaquette-operator outcome of the schedule, in time order."""
    circuit = _circuit(layout, schedule, reset_aux, allow_empty_rounds)
    records = _RecordMap(circuit, reset_aux)
    evaluations = []
    if code == CodeFamily.HONEYCOMB:
        for plaquette, rounds, terms in _honeycomb_terms(layout, schedule):
            evaluations.append(PlaquetteEval(
                plaquette_id=plaquette.id, color=plaquette.color, basis=RoundBasis.NATIVE,
                rounds=rounds, records=records.records(terms),
            ))
    else:
        for plaquette, rounds, terms, basis in _color_code_terms(layout, schedule):
            evaluations.append(PlaquetteEval(
                plaquette_id=plaquette.id, color=plaquette.color, basis=basis,
                rounds=rounds, records=records.records(terms),
            ))
    return evaluations


def _disturbed(schedule: Sequence[RoundSpec], color: Color, basis: RoundBasis, after: int, before: int) -> bool:
    """A round of the plaquette's color in the other basis lies strictly between two evaluations."""
    other = basis.flipped()
    return any(
        schedule[t - 1].color == color and schedule[t - 1].basis == other
        for t in range(after + 1, before)
    )


def _compare(
    evaluations: list[PlaquetteEval],
    schedule: Sequence[RoundSpec],
    code: CodeFamily,
) -> list[Detector]:
    groups: dict[tuple[int, RoundBasis], list[PlaquetteEval]] = {}
    for evaluation in evaluations:
        groups.setdefault((evaluation.plaquette_id, evaluation.basis), []).append(evaluation)

    basis_order = {RoundBasis.NATIVE: 0, RoundBasis.X: 1, RoundBasis.Z: 2}
    detectors = []
    for (plaquette_id, basis) in sorted(groups, key=lambda key: (key[0], basis_order[key[1]])):
        series = sorted(groups[(plaquette_id, basis)], key=lambda e: e.rounds)
        for earlier, later in zip(series, series[1:]):
            if code == CodeFamily.COLOR and _disturbed(
                schedule, earlier.color, basis, earlier.rounds[-1], later.rounds[0]
            ):
                continue
            detectors.append(Detector(
                id=len(detectors),
                plaquette_id=plaquette_id,
                color=earlier.color,
                basis=basis,
                rounds=(earlier.rounds[0], later.rounds[0]),
                records=tuple(sorted(earlier.records ^ later.records)),
            ))
    return detectors


def honeycomb_detectors(
    layout: Layout,
    schedule: Sequence[RoundSpec],
    reset_aux: bool,
    allow_empty_rounds: bool = False,
) -> list[Detector]:
    """Comparisons of consecutive evaluations of every plaquette (W commutes with all links)."""
    _check_family(schedule, CodeFamily.HONEYCOMB, HONEYCOMB_MIN_ROUNDS)
    evaluations = plaquette_evaluations(layout, schedule, CodeFamily.HONEYCOMB, reset_aux, allow_empty_rounds)
    return _compare(evaluations, schedule, CodeFamily.HONEYCOMB)


def color_code_detectors(
    layout: Layout,
    schedule: Sequence[RoundSpec],
    reset_aux: bool,
    allow_empty_rounds: bool = False,
) -> list[Detector]:
    """
    Comparisons of consecutive W^alpha evaluations on one plaquette of color c,
    skipped when a c-colored round in the other basis lies between them.
    Initial values are never compared.
    """
    _check_family(schedule, CodeFamily.COLOR, COLOR_CODE_MIN_ROUNDS)
    evaluations = plaquette_evaluations(layout, schedule, CodeFamily.COLOR, reset_aux, allow_empty_rounds)
    return _compare(evaluations, schedule, CodeFamily.COLOR)


def detectors_for(
    code: CodeFamily,
    layout: Layout,
    schedule: Sequence[RoundSpec],
    reset_aux: bool,
    allow_empty_rounds: bool = False,
) -> list[Detector]:
    if code == CodeFamily.HONEYCOMB:
        return honeycomb_detectors(layout, schedule, reset_aux, allow_empty_rounds)
    return color_code_detectors(layout, schedule, reset_aux, allow_empty_rounds)


# ============ Verification ============

def verify_detectors(
    circuit: Circuit,
    detectors: Sequence[Detector],
    trials: Optional[int] = None,
    base_seed: Optional[int] = None,
) -> VerificationReport:
    """Run the noiseless circuit `trials` times and report every detector that ever fires."""
    if trials is None:
        trials = settings.VERIFY_TRIALS
    if trials < 1:
        raise UsageError(f"verification needs at least one trial, got {trials}")
    seed = settings.VERIFY_SEED if base_seed is None else base_seed
    table = run_shots(strip_noise(circuit), trials, seed)
    failures = []
    for detector in detectors:
        if any(r >= table.num_records for r in detector.records):
            failures.append(DetectorFailure(
                detector_id=detector.id, plaquette_id=detector.plaquette_id, basis=detector.basis, fired=trials,
            ))
            continue
        parity = np.bitwise_xor.reduce(table.bits[:, list(detector.records)], axis=1) if detector.records else np.zeros(trials, np.uint8)
        fired = int(parity.sum())
        if fired:
            failures.append(DetectorFailure(
                detector_id=detector.id, plaquette_id=detector.plaquette_id, basis=detector.basis, fired=fired,
            ))
    report = VerificationReport(trials=trials, detectors=len(detectors), failures=failures)
    event_log.info(
        "detectors.verified",
        target_type="layout",
        target_id=circuit.layout.name,
        details={"trials": trials, "detectors": len(detectors), "failures": len(failures)},
    )
    return report


# ============ Pauli algebra ============

def link_operator(link: Link, basis: Optional[PauliType] = None) -> PauliString:
    """sigma^basis (x) sigma^basis on the endpoints; the link's own type by default."""
    pauli = (basis or link.pauli_type).value
    return PauliString.from_map({q: pauli for q in link.endpoints})


def honeycomb_plaquette_operator(layout: Layout, plaquette: Plaquette) -> PauliString:
    """Product of the native operators of the boundary links, up to phase."""
    operator = PauliString()
    for lid in plaquette.boundary:
        operator = operator * link_operator(layout.link(lid))
    return operator


def color_plaquette_operator(plaquette: Plaquette, basis: PauliType) -> PauliString:
    """W^alpha: sigma^alpha on all six vertices."""
    if basis not in (PauliType.X, PauliType.Z):
        raise ScheduleError(f"Color-code plaquette operators exist for x and z only, not {basis.value}")
    return PauliString.from_map({q: basis.value for q in plaquette.vertices})
