"""
Simulator service.
Runs circuits shot by shot under the determinism contract: shot k of a run
with base seed s always sees the draws of derive_seed(s, k), so tables are
identical for any batch size or worker count.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np

from hexfloquet.core.config import settings
from hexfloquet.core.errors import SimulationError
from hexfloquet.core.logging import event_log
from hexfloquet.engine.dense import run_dense
from hexfloquet.engine.frame import FrameSampler
from hexfloquet.engine.program import Program, compile_circuit
from hexfloquet.engine.seeding import derive_seed, draw_matrix
from hexfloquet.engine.shots import ShotTable
from hexfloquet.engine.tableau import reference_sample, run_direct
from hexfloquet.models.circuit import Circuit

BatchRunner = Callable[[np.ndarray], np.ndarray]


def _chunks(n_shots: int, chunk: int) -> list[tuple[int, int]]:
    return [(start, min(start + chunk, n_shots)) for start in range(0, n_shots, chunk)]


def _sample(
    program: Program,
    runner: BatchRunner,
    seeds: list[int],
    threads: int,
    chunk: int,
) -> np.ndarray:
    """Run `runner` over fixed-size batches of seeds and stack results in shot order."""
    def work(bounds: tuple[int, int]) -> np.ndarray:
        start, stop = bounds
        return runner(draw_matrix(seeds[start:stop], program.num_draws))

    bounds = _chunks(len(seeds), chunk)
    if threads <= 1 or len(bounds) == 1:
        parts = [work(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, bounds))
    if not parts:
        return np.zeros((0, program.num_records), dtype=np.uint8)
    return np.concatenate(parts, axis=0)


def _check_shots(n_shots: int) -> None:
    if n_shots < 1:
        raise SimulationError(f"n_shots must be at least 1, got {n_shots}")


def _frame_runner(program: Program) -> BatchRunner:
    sampler = FrameSampler(program, reference_sample(program))
    return sampler.sample


def _per_shot_runner(program: Program, shot: Callable[[Program, np.ndarray], np.ndarray]) -> BatchRunner:
    def run(draws: np.ndarray) -> np.ndarray:
        rows = [shot(program, draws[:, j]) for j in range(draws.shape[1])]
        return np.array(rows, dtype=np.uint8).reshape(draws.shape[1], program.num_records)
    return run


def run_shots(
    circuit: Circuit,
    n_shots: int,
    base_seed: int,
    threads: Optional[int] = None,
    chunk: Optional[int] = None,
) -> ShotTable:
    """Monte-Carlo sample n_shots shots with the Pauli-frame engine."""
    _check_shots(n_shots)
    program = compile_circuit(circuit)
    workers = settings.resolve_threads(threads)
    seeds = [derive_seed(base_seed, k) for k in range(n_shots)]
    bits = _sample(program, _frame_runner(program), seeds, workers, chunk or settings.SHOT_CHUNK)
    fingerprint = circuit.fingerprint()
    event_log.log_simulation("frame", fingerprint, n_shots, base_seed, workers)
    return ShotTable(bits=bits, seed=base_seed, fingerprint=fingerprint, engine="frame")


def run_shot(circuit: Circuit, seed: int) -> np.ndarray:
    """Outcome bits of one shot whose draws come from `seed` directly."""
    program = compile_circuit(circuit)
    runner = _frame_runner(program)
    return runner(draw_matrix([seed], program.num_draws))[0]


def tableau_run_shots(circuit: Circuit, n_shots: int, base_seed: int) -> ShotTable:
    """Each shot simulated on its own tableau; slow, used to cross-check the frame engine."""
    _check_shots(n_shots)
    program = compile_circuit(circuit)
    seeds = [derive_seed(base_seed, k) for k in range(n_shots)]
    bits = _sample(program, _per_shot_runner(program, run_direct), seeds, 1, settings.SHOT_CHUNK)
    return ShotTable(bits=bits, seed=base_seed, fingerprint=circuit.fingerprint(), engine="tableau")


def dense_oracle_run(
    circuit: Circuit,
    n_shots: int,
    base_seed: int,
    threads: Optional[int] = None,
) -> ShotTable:
    """State-vector simulation of small circuits under the same seeding contract."""
    _check_shots(n_shots)
    program = compile_circuit(circuit)
    if program.num_qubits > settings.DENSE_MAX_QUBITS:
        raise SimulationError(
            f"dense oracle supports at most {settings.DENSE_MAX_QUBITS} qubits, circuit uses {program.num_qubits}"
        )
    workers = settings.resolve_threads(threads)
    seeds = [derive_seed(base_seed, k) for k in range(n_shots)]
    bits = _sample(program, _per_shot_runner(program, run_dense), seeds, workers, settings.SHOT_CHUNK)
    fingerprint = circuit.fingerprint()
    event_log.log_simulation("dense", fingerprint, n_shots, base_seed, workers)
    return ShotTable(bits=bits, seed=base_seed, fingerprint=fingerprint, engine="dense")
