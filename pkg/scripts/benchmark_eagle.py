#!/usr/bin/env python3
"""
Scale benchmark: honeycomb schedule on eagle127 with uniform noise.
Prints wall-clock time per stage and fails when sampling exceeds the budget.
"""

import argparse
import sys
import time

from hexfloquet.models.codes import CodeFamily
from hexfloquet.models.noise import NoiseModel
from hexfloquet.services.experiment_service import prepare, run_point
from hexfloquet.services.lattice_service import build_layout


def benchmark(shots: int, p: float, threads: int, budget: float) -> bool:
    start = time.perf_counter()
    layout = build_layout("eagle127")
    prepared = prepare(CodeFamily.HONEYCOMB, layout)
    built = time.perf_counter()
    print(f"Built eagle127: {len(layout.active_qubits)} active qubits, "
          f"{len(prepared.detectors)} detectors, {prepared.circuit.num_records} records "
          f"({built - start:.2f}s)")

    report, _ = run_point(prepared, NoiseModel.uniform(p), shots, base_seed=1, threads=threads)
    elapsed = time.perf_counter() - built
    print(f"Sampled {shots} shots at p={p} on {threads} thread(s): {elapsed:.2f}s")
    print(f"   mean={report.mean:.4f} min={report.min:.4f} max={report.max:.4f}")

    if elapsed > budget:
        print(f"❌ Over budget ({budget:.0f}s)")
        return False
    print("✅ Within budget")
    return True


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--shots", type=int, default=10_000)
    parser.add_argument("--p", type=float, default=0.02)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--budget", type=float, default=60.0, help="seconds allowed for sampling")
    args = parser.parse_args()
    sys.exit(0 if benchmark(args.shots, args.p, args.threads, args.budget) else 1)
