#!/usr/bin/env python3
"""Print qubit, link and plaquette counts of every named device and validate its coloring."""

from collections import Counter

from hexfloquet.db.devices import DEVICE_NAMES, get_device
from hexfloquet.services.lattice_service import build_layout, validate_coloring


def census():
    ok = True
    for name in DEVICE_NAMES:
        layout = build_layout(name)
        colors = Counter(p.color.value for p in layout.plaquettes)
        print(f"{name}:")
        print(f"  - qubits: {get_device(name).num_qubits} ({len(layout.code_qubits)} code, "
              f"{len(layout.aux_qubits)} auxiliary)")
        print(f"  - couplings: {len(layout.coupling)}")
        print(f"  - links: {len(layout.links)}")
        print(f"  - plaquettes: {len(layout.plaquettes)} {dict(sorted(colors.items()))}")
        violations = validate_coloring(layout)
        for violation in violations:
            print(f"  ⚠️ {violation}")
        ok = ok and not violations
    return ok


if __name__ == "__main__":
    raise SystemExit(0 if census() else 1)
