"""
hexfloquet - Floquet code circuits on heavy-hexagon lattices.

Generates the measurement circuits of the honeycomb Floquet code and the
Floquet Color code, simulates them under circuit-level Pauli noise and
reports per-plaquette syndrome-change detection rates.
"""
__version__ = "0.1.0"
