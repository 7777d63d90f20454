"""
Lattice service.
Builds heavy-hexagon layouts for named devices and rectangular patches,
validates their tri-coloring, and converts layouts to and from JSON documents.

Geometry (see hexfloquet.db.devices for the coordinate frame):
- code qubits are row qubits at even x; row qubits at odd x and bridges are auxiliary
- hexagon (g, b) lies between rows g and g + 1 with bridges at columns b and b + 4,
  where b = 2 (g mod 2) (mod 4)
- hexagon colors follow ((b / 2 + 3 g) / 2) mod 3, which gives each hexagon
  neighbours of both other colors
"""
import json
import re
from collections import Counter
from functools import lru_cache
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from hexfloquet.core.errors import LayoutError
from hexfloquet.core.logging import event_log
from hexfloquet.db.devices import DEVICE_NAMES, Coord, coupling_from_positions, get_device
from hexfloquet.models.lattice import Color, Layout, Link, PauliType, Plaquette, QubitRole
from hexfloquet.schemas.report_schemas import (
    ColoringViolation,
    LayoutDocument,
    LinkRecord,
    PlaquetteRecord,
    QubitRecord,
    ViolationSubject,
)

_COLOR_CYCLE = (Color.RED, Color.BLUE, Color.GREEN)

# Patches shift the palette so that the first plaquette is green.
_PATCH_COLOR_OFFSET = 2

Hexagon = tuple[int, int]


# ============ Geometry ============

def _bridge_residue(gap: int) -> int:
    return 2 * (gap % 2)


def _hexagon_color_index(gap: int, b: int) -> int:
    return ((b // 2 + 3 * gap) // 2) % 3


def _vertex_coords(gap: int, b: int) -> list[Coord]:
    """Clockwise from the top-left vertex."""
    top, bottom = 2 * gap, 2 * gap + 2
    return [(b, top), (b + 2, top), (b + 4, top), (b + 4, bottom), (b + 2, bottom), (b, bottom)]


def _boundary_aux_coords(gap: int, b: int) -> list[Coord]:
    """Aux coordinate of boundary link i, which joins vertex i and vertex i + 1."""
    top, mid, bottom = 2 * gap, 2 * gap + 1, 2 * gap + 2
    return [(b + 1, top), (b + 3, top), (b + 4, mid), (b + 3, bottom), (b + 1, bottom), (b, mid)]


def _hexagon_coords(gap: int, b: int) -> list[Coord]:
    return _vertex_coords(gap, b) + _boundary_aux_coords(gap, b)


def _bridge_points_down(x: int, row: int) -> bool:
    """Whether the row qubit at even x has its bridge below (else above)."""
    return x % 4 == _bridge_residue(row)


def _link_endpoints(aux: Coord) -> tuple[Coord, Coord]:
    x, y = aux
    if y % 2:
        return (x, y - 1), (x, y + 1)
    return (x - 1, y), (x + 1, y)


def _link_pauli_type(aux: Coord) -> PauliType:
    x, y = aux
    if y % 2:
        return PauliType.Y
    return PauliType.X if _bridge_points_down(x + 1, y // 2) else PauliType.Z


def _flanking_hexagons(aux: Coord) -> tuple[Hexagon, Hexagon]:
    """The two hexagons whose boundary contains the link (on the infinite lattice)."""
    x, y = aux
    if y % 2:
        gap = (y - 1) // 2
        return (gap, x - 4), (gap, x)
    row, left = y // 2, x - 1
    found = []
    for gap in (row - 1, row):
        for b in (left, left - 2):
            if b % 4 == _bridge_residue(gap):
                found.append((gap, b))
    below_or_above = sorted(found)
    return below_or_above[0], below_or_above[1]


# ============ Construction ============

def _assemble(name: str, positions: dict[int, Coord], hexagons: list[Hexagon], color_offset: int) -> Layout:
    by_coord = {coord: q for q, coord in positions.items()}

    def color_of(hexagon: Hexagon) -> Color:
        return _COLOR_CYCLE[(_hexagon_color_index(*hexagon) + color_offset) % 3]

    aux_coords = sorted(
        {coord for hexagon in hexagons for coord in _boundary_aux_coords(*hexagon)},
        key=lambda c: (c[1], c[0]),
    )
    link_id_by_aux: dict[Coord, int] = {}
    links = []
    for link_id, aux in enumerate(aux_coords):
        first, second = _link_endpoints(aux)
        flank = {color_of(h) for h in _flanking_hexagons(aux)}
        (third,) = set(Color) - flank
        links.append(Link(
            id=link_id,
            pauli_type=_link_pauli_type(aux),
            color=third,
            endpoints=(by_coord[first], by_coord[second]),
            aux=by_coord[aux],
        ))
        link_id_by_aux[aux] = link_id

    plaquettes = [
        Plaquette(
            id=pid,
            color=color_of(hexagon),
            vertices=tuple(by_coord[c] for c in _vertex_coords(*hexagon)),
            boundary=tuple(link_id_by_aux[c] for c in _boundary_aux_coords(*hexagon)),
        )
        for pid, hexagon in enumerate(sorted(hexagons))
    ]

    roles = {q: QubitRole.UNUSED for q in positions}
    for link in links:
        roles[link.aux] = QubitRole.AUXILIARY
        for q in link.endpoints:
            roles[q] = QubitRole.CODE

    layout = Layout(
        name=name,
        qubits=dict(sorted(roles.items())),
        links=tuple(links),
        plaquettes=tuple(plaquettes),
        coupling=coupling_from_positions(positions),
    )
    event_log.log_layout_built(name, len(layout.active_qubits), len(links), len(plaquettes))
    return layout


def _complete_hexagons(positions: dict[int, Coord]) -> list[Hexagon]:
    """Exhaustive enumeration: every bridge is tried as the left bridge of a hexagon."""
    present = set(positions.values())
    found = []
    for x, y in present:
        if y % 2 == 0:
            continue
        gap = (y - 1) // 2
        if x % 4 != _bridge_residue(gap):
            continue
        if all(c in present for c in _hexagon_coords(gap, x)):
            found.append((gap, x))
    return sorted(found)


@lru_cache(maxsize=None)
def build_layout(device_name: str) -> Layout:
    """Layout of a named device with every complete plaquette its coupling graph embeds."""
    if device_name not in DEVICE_NAMES:
        raise LayoutError(f"unknown device {device_name!r}; expected one of {', '.join(DEVICE_NAMES)}")
    device = get_device(device_name)
    return _assemble(device_name, device.positions, _complete_hexagons(device.positions), 0)


@lru_cache(maxsize=None)
def build_patch(rows: int, cols: int) -> Layout:
    """Planar patch of rows x cols plaquettes; qubit ids are consecutive in reading order."""
    if rows < 1 or cols < 1:
        raise LayoutError(f"patch dimensions must be positive, got {rows}x{cols}")
    hexagons = [(g, _bridge_residue(g) + 4 * k) for g in range(rows) for k in range(cols)]
    coords = sorted({c for h in hexagons for c in _hexagon_coords(*h)}, key=lambda c: (c[1], c[0]))
    positions = {q: coord for q, coord in enumerate(coords)}
    return _assemble(f"patch:{rows}x{cols}", positions, hexagons, _PATCH_COLOR_OFFSET)


_PATCH_PATTERN = re.compile(r"^patch:(\d+)x(\d+)$")


def resolve_layout(name: str) -> Layout:
    """Device name, or patch:RxC."""
    match = _PATCH_PATTERN.match(name.strip().lower())
    if match:
        return build_patch(int(match.group(1)), int(match.group(2)))
    return build_layout(name.strip().lower())


# ============ Validation ============

def validate_coloring(layout: Layout) -> list[ColoringViolation]:
    """
    Check the link and plaquette invariants without using coordinates.
    An empty list means the layout is valid.
    """
    violations: list[ColoringViolation] = []

    def report(subject: ViolationSubject, subject_id: int, message: str) -> None:
        violations.append(ColoringViolation(subject=subject, subject_id=subject_id, message=message))

    links = {link.id: link for link in layout.links}

    for link in layout.links:
        for q in link.endpoints:
            if layout.qubits.get(q) != QubitRole.CODE:
                report(ViolationSubject.LINK, link.id, f"endpoint {q} is not a code qubit")
            if not layout.coupled(q, link.aux):
                report(ViolationSubject.LINK, link.id, f"endpoint {q} is not coupled to aux {link.aux}")
        if layout.qubits.get(link.aux) != QubitRole.AUXILIARY:
            report(ViolationSubject.LINK, link.id, f"aux {link.aux} is not an auxiliary qubit")

    bounded_by: dict[int, list[Plaquette]] = {lid: [] for lid in links}
    for plaquette in layout.plaquettes:
        pid = plaquette.id
        if len(plaquette.vertices) != 6 or len(set(plaquette.vertices)) != 6:
            report(ViolationSubject.PLAQUETTE, pid, "needs 6 distinct vertices")
            continue
        if len(plaquette.boundary) != 6 or len(set(plaquette.boundary)) != 6:
            report(ViolationSubject.PLAQUETTE, pid, "needs 6 distinct boundary links")
            continue
        missing = [lid for lid in plaquette.boundary if lid not in links]
        if missing:
            report(ViolationSubject.PLAQUETTE, pid, f"boundary references unknown links {missing}")
            continue
        boundary = [links[lid] for lid in plaquette.boundary]
        for i, link in enumerate(boundary):
            bounded_by[link.id].append(plaquette)
            expected = {plaquette.vertices[i], plaquette.vertices[(i + 1) % 6]}
            if set(link.endpoints) != expected:
                report(ViolationSubject.PLAQUETTE, pid, f"boundary link {link.id} does not join vertices {i} and {(i + 1) % 6}")
            if link.color == plaquette.color:
                report(ViolationSubject.LINK, link.id, f"has the color of plaquette {pid} it bounds")
        # alternation: even and odd boundary positions each carry one color
        for parity in (0, 1):
            group = boundary[parity::2]
            counts = Counter(l.color for l in group)
            majority, size = counts.most_common(1)[0]
            for link in group:
                if size < 2 or link.color != majority:
                    report(ViolationSubject.LINK, link.id, f"breaks color alternation around plaquette {pid}")
        colors = Counter(l.color for l in boundary)
        if len(colors) != 2 or set(colors.values()) != {3}:
            report(ViolationSubject.PLAQUETTE, pid, "boundary must hold 3 links of each non-plaquette color")

    for link in layout.links:
        if len(bounded_by[link.id]) > 2:
            report(ViolationSubject.LINK, link.id, "bounds more than two plaquettes")
        bounding = {p.id for p in bounded_by[link.id]}
        for plaquette in layout.plaquettes:
            if plaquette.id in bounding:
                continue
            touching = len(set(link.endpoints) & set(plaquette.vertices))
            if touching == 1 and plaquette.color != link.color:
                report(ViolationSubject.LINK, link.id, f"connects to plaquette {plaquette.id} of another color")

    incident: dict[int, list[Link]] = {}
    for link in layout.links:
        for q in link.endpoints:
            incident.setdefault(q, []).append(link)
    for q, around in sorted(incident.items()):
        types = [l.pauli_type for l in around]
        if len(types) != len(set(types)):
            report(ViolationSubject.QUBIT, q, "incident links repeat a pauli type")

    return violations


# ============ Documents ============

def layout_to_document(layout: Layout) -> LayoutDocument:
    return LayoutDocument(
        name=layout.name,
        qubits=[QubitRecord(id=q, role=role) for q, role in sorted(layout.qubits.items())],
        links=[LinkRecord(**link.model_dump()) for link in layout.links],
        plaquettes=[
            PlaquetteRecord(id=p.id, color=p.color, vertices=list(p.vertices), boundary=list(p.boundary))
            for p in layout.plaquettes
        ],
        coupling=sorted(layout.coupling),
    )


def export_layout(layout: Layout, path: Union[str, Path, None] = None) -> str:
    """Serialize to the JSON layout document; also write it when a path is given."""
    text = layout_to_document(layout).model_dump_json(indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def import_layout(source: Union[str, Path]) -> Layout:
    """Parse a JSON layout document from a path or a JSON string."""
    text = source
    if isinstance(source, Path) or not str(source).lstrip().startswith("{"):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise LayoutError(f"cannot read layout document: {e}") from e
    try:
        document = LayoutDocument.model_validate(json.loads(text))
        return Layout(
            name=document.name,
            qubits={r.id: r.role for r in document.qubits},
            links=tuple(Link(**r.model_dump()) for r in document.links),
            plaquettes=tuple(
                Plaquette(id=r.id, color=r.color, vertices=tuple(r.vertices), boundary=tuple(r.boundary))
                for r in document.plaquettes
            ),
            coupling=frozenset((min(a, b), max(a, b)) for a, b in document.coupling),
        )
    except (json.JSONDecodeError, ValidationError) as e:
        raise LayoutError(f"malformed layout document: {e}") from e
