"""
Simulation engine: stabilizer tableau, Pauli-frame sampler and dense-state oracle.
All engines execute the same compiled program and consume the same per-shot draws.
"""
