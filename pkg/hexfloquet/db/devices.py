"""
Static coordinate maps of the supported heavy-hex devices.

Every physical qubit is placed on a common brick-wall frame:
- long rows sit at even y (row r at y = 2r), one qubit per integer x
- bridge qubits sit at odd y between two rows
Physical couplings follow from positions: a row qubit couples to its right
neighbour in the same row, a bridge qubit couples to the qubits directly
above and below it. The resulting edge sets are the published coupling
maps (28 edges for the 27-qubit device, 72 for 65 qubits, 144 for 127).
"""
from functools import lru_cache

from pydantic import BaseModel, ConfigDict

Coord = tuple[int, int]


class DeviceMap(BaseModel):
    """Physical qubit ids and their lattice coordinates."""
    model_config = ConfigDict(frozen=True)

    name: str
    num_qubits: int
    positions: dict[int, Coord]

    def coupling(self) -> frozenset[tuple[int, int]]:
        return coupling_from_positions(self.positions)


def coupling_from_positions(positions: dict[int, Coord]) -> frozenset[tuple[int, int]]:
    """Nearest-neighbour edges of the brick-wall frame."""
    by_coord = {coord: q for q, coord in positions.items()}
    edges = set()
    for q, (x, y) in positions.items():
        if y % 2 == 0:
            neighbours = [(x + 1, y)]
        else:
            neighbours = [(x, y - 1), (x, y + 1)]
        for coord in neighbours:
            other = by_coord.get(coord)
            if other is not None:
                edges.add((min(q, other), max(q, other)))
    return frozenset(edges)


def _rows(row_specs: list[tuple[int, int, int]], bridge_specs: list[tuple[int, list[tuple[int, int]]]]) -> dict[int, Coord]:
    """
    row_specs: (first_id, x_start, x_end) per long row, top to bottom, ids consecutive along x.
    bridge_specs: (gap, [(id, x), ...]) per gap between rows gap and gap + 1.
    """
    positions: dict[int, Coord] = {}
    for r, (first_id, x_start, x_end) in enumerate(row_specs):
        for offset, x in enumerate(range(x_start, x_end + 1)):
            positions[first_id + offset] = (x, 2 * r)
    for gap, bridges in bridge_specs:
        for qubit, x in bridges:
            positions[qubit] = (x, 2 * gap + 1)
    return positions


# 27 qubits. Row ids are not consecutive along x on this device, so positions are listed directly.
_FALCON27_ROW0 = [0, 1, 4, 7, 10, 12, 15, 18, 21, 23]   # x = -1 .. 8
_FALCON27_ROW1 = [3, 5, 8, 11, 14, 16, 19, 22, 25, 26]  # x = 0 .. 9


def _falcon27() -> dict[int, Coord]:
    positions: dict[int, Coord] = {}
    for x, q in enumerate(_FALCON27_ROW0, start=-1):
        positions[q] = (x, 0)
    for x, q in enumerate(_FALCON27_ROW1):
        positions[q] = (x, 2)
    positions.update({2: (0, 1), 13: (4, 1), 24: (8, 1)})
    # dangling bridge stubs above and below the two rows
    positions.update({6: (2, -1), 17: (6, -1), 9: (2, 3), 20: (6, 3)})
    return positions


def _hummingbird65() -> dict[int, Coord]:
    return _rows(
        [(0, 0, 9), (13, 0, 10), (27, 0, 10), (41, 0, 10), (55, 1, 10)],
        [
            (0, [(10, 0), (11, 4), (12, 8)]),
            (1, [(24, 2), (25, 6), (26, 10)]),
            (2, [(38, 0), (39, 4), (40, 8)]),
            (3, [(52, 2), (53, 6), (54, 10)]),
        ],
    )


def _eagle127() -> dict[int, Coord]:
    return _rows(
        [(0, 0, 13), (18, 0, 14), (37, 0, 14), (56, 0, 14), (75, 0, 14), (94, 0, 14), (113, 1, 14)],
        [
            (0, [(14, 0), (15, 4), (16, 8), (17, 12)]),
            (1, [(33, 2), (34, 6), (35, 10), (36, 14)]),
            (2, [(52, 0), (53, 4), (54, 8), (55, 12)]),
            (3, [(71, 2), (72, 6), (73, 10), (74, 14)]),
            (4, [(90, 0), (91, 4), (92, 8), (93, 12)]),
            (5, [(109, 2), (110, 6), (111, 10), (112, 14)]),
        ],
    )


_BUILDERS = {
    "falcon27": (27, _falcon27),
    "hummingbird65": (65, _hummingbird65),
    "eagle127": (127, _eagle127),
}

DEVICE_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get_device(name: str) -> DeviceMap:
    """Device map by name; KeyError for unknown names."""
    size, builder = _BUILDERS[name]
    positions = builder()
    assert len(positions) == size, f"{name}: expected {size} qubits, mapped {len(positions)}"
    return DeviceMap(name=name, num_qubits=size, positions=positions)
