"""
Experiment service.
Wires layout, schedule, circuit, noise, simulation and analysis into
reproducible experiment points and noise sweeps.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

from hexfloquet.core.errors import UsageError
from hexfloquet.core.logging import event_log
from hexfloquet.engine.shots import ShotTable
from hexfloquet.models.circuit import Circuit
from hexfloquet.models.codes import CodeFamily, Detector, RoundSpec
from hexfloquet.models.lattice import Layout
from hexfloquet.models.noise import NoiseModel
from hexfloquet.schemas.report_schemas import DetectionReport, ExperimentConfig, RunMetadata, SweepConfig
from hexfloquet.services.analysis_service import detection_rates
from hexfloquet.services.circuit_service import schedule_rounds
from hexfloquet.services.code_service import detectors_for, parse_order, schedule_for
from hexfloquet.services.lattice_service import resolve_layout
from hexfloquet.services.noise_service import apply_noise
from hexfloquet.services.simulator_service import run_shots


@dataclass(frozen=True)
class PreparedExperiment:
    """Noiseless circuit and detectors of one (code, layout, schedule, reset mode)."""
    code: CodeFamily
    layout: Layout
    schedule: tuple[RoundSpec, ...]
    reset_aux: bool
    circuit: Circuit
    detectors: tuple[Detector, ...]


def prepare(
    code: CodeFamily,
    layout: Layout,
    rounds: Optional[int] = None,
    reset_aux: bool = True,
    order: Optional[str] = None,
    start_color=None,
    start_basis=None,
    allow_empty_rounds: bool = False,
) -> PreparedExperiment:
    n_rounds = rounds if rounds is not None else (7 if code == CodeFamily.HONEYCOMB else 10)
    kwargs = {}
    if start_color is not None:
        kwargs["start_color"] = start_color
    if start_basis is not None:
        kwargs["start_basis"] = start_basis
    schedule = schedule_for(code, n_rounds, parse_order(order) if order else None, **kwargs)
    detectors = detectors_for(code, layout, schedule, reset_aux, allow_empty_rounds)
    circuit = schedule_rounds(layout, schedule, reset_aux, allow_empty_rounds)
    return PreparedExperiment(
        code=code,
        layout=layout,
        schedule=tuple(schedule),
        reset_aux=reset_aux,
        circuit=circuit,
        detectors=tuple(detectors),
    )


def run_point(
    prepared: PreparedExperiment,
    model: NoiseModel,
    shots: int,
    base_seed: int,
    threads: Optional[int] = None,
) -> tuple[DetectionReport, ShotTable]:
    """Simulate one noise point and compute its detection report."""
    noisy = apply_noise(prepared.circuit, model)
    table = run_shots(noisy, shots, base_seed, threads=threads)
    metadata = RunMetadata(
        code=prepared.code,
        layout=prepared.layout.name,
        reset_aux=prepared.reset_aux,
        p=model.nominal_p,
        shots=shots,
        seed=base_seed,
    )
    report = detection_rates(table, prepared.detectors, metadata)
    event_log.log_experiment(prepared.code.value, prepared.layout.name, model.nominal_p, shots, report.mean)
    return report, table


def sweep(
    code: CodeFamily,
    layout: Layout,
    p_values: Sequence[float],
    shots: int,
    base_seed: int,
    reset_aux: bool = True,
    threads: Optional[int] = None,
    rounds: Optional[int] = None,
    allow_empty_rounds: bool = False,
    order: Optional[str] = None,
    start_color=None,
    start_basis=None,
) -> list[DetectionReport]:
    """
    One report per p. Every point reuses base_seed, so the points share their
    random draws and differ only through p.
    """
    if not p_values:
        raise UsageError("a sweep needs at least one p value")
    prepared = prepare(
        code,
        layout,
        rounds=rounds,
        reset_aux=reset_aux,
        order=order,
        start_color=start_color,
        start_basis=start_basis,
        allow_empty_rounds=allow_empty_rounds,
    )
    return [run_point(prepared, NoiseModel.uniform(p), shots, base_seed, threads)[0] for p in p_values]


class ExperimentService:
    """Runs configured experiments for the command line."""

    def __init__(self, threads: Optional[int] = None):
        self.threads = threads

    def prepare(self, config: ExperimentConfig) -> PreparedExperiment:
        return prepare(
            config.code,
            resolve_layout(config.layout),
            rounds=config.rounds,
            reset_aux=config.reset_aux,
            order=config.order,
            start_color=config.start_color,
            start_basis=config.start_basis,
            allow_empty_rounds=config.allow_empty_rounds,
        )

    def run(self, config: ExperimentConfig) -> tuple[DetectionReport, ShotTable]:
        prepared = self.prepare(config)
        return run_point(prepared, config.noise_model(), config.shots, config.seed, self.threads)

    def sweep(self, config: SweepConfig) -> list[DetectionReport]:
        """Every code in the config (or its single code), every p, in that order."""
        layout = resolve_layout(config.layout)
        reports = []
        for code in config.sweep_codes:
            reports.extend(sweep(
                code,
                layout,
                config.p_values,
                config.shots,
                config.seed,
                reset_aux=config.reset_aux,
                threads=self.threads,
                rounds=config.rounds,
                allow_empty_rounds=config.allow_empty_rounds,
                order=config.order,
                start_color=config.start_color,
                start_basis=config.start_basis,
            ))
        return reports
