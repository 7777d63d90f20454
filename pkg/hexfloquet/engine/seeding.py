"""
Per-shot random streams.

Shot k of a run with base seed s draws from Philox seeded with
derive_seed(s, k), the first 64-bit word of SeedSequence([s, k]).
The derivation uses only numpy's documented, platform-independent
algorithms, so draws do not depend on platform, batch size or thread count.
"""
import numpy as np


def derive_seed(base_seed: int, shot: int) -> int:
    """Seed of shot `shot` in a run with `base_seed`."""
    state = np.random.SeedSequence([int(base_seed), int(shot)]).generate_state(1, np.uint64)
    return int(state[0])


def shot_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def draw_matrix(seeds: list[int], num_draws: int) -> np.ndarray:
    """Uniform draws laid out (num_draws, shots): column j belongs to seeds[j]."""
    draws = np.empty((num_draws, len(seeds)), dtype=np.float64)
    for j, seed in enumerate(seeds):
        draws[:, j] = shot_generator(seed).random(num_draws)
    return draws
