"""
Lattice Tests

Tests:
- Named device layouts: plaquette counts, colors, qubit roles, coupling sizes
- Patches: plaquette sharing and coloring
- Coloring invariants and injected violations
- Layout documents (JSON export/import)
"""
import json
from collections import Counter

import pytest
from pydantic import ValidationError

from hexfloquet.core.errors import LayoutError
from hexfloquet.db.devices import DEVICE_NAMES, get_device
from hexfloquet.models.lattice import Color, QubitRole
from hexfloquet.schemas.report_schemas import ViolationSubject
from hexfloquet.services.lattice_service import (
    build_layout,
    build_patch,
    export_layout,
    import_layout,
    resolve_layout,
    validate_coloring,
)
from tests.conftest import NAMED_LAYOUTS


class TestNamedDevices:
    """Tests for the static device layouts."""

    def test_falcon27_has_red_and_blue_pair(self, falcon27):
        """falcon27 supports exactly one red and one blue plaquette."""
        assert len(falcon27.plaquettes) == 2, "falcon27 should embed 2 plaquettes"
        assert {p.color for p in falcon27.plaquettes} == {Color.RED, Color.BLUE}

    def test_falcon27_qubit_roles(self, falcon27):
        """10 code qubits, 11 auxiliaries, 6 qubits left unused."""
        roles = Counter(falcon27.qubits.values())
        assert roles[QubitRole.CODE] == 10
        assert roles[QubitRole.AUXILIARY] == 11
        assert roles[QubitRole.UNUSED] == 6
        assert len(falcon27.links) == 11

    def test_hummingbird65_has_eight_plaquettes(self, hummingbird65):
        assert len(hummingbird65.plaquettes) == 8, "hummingbird65 should embed 8 plaquettes"
        colors = Counter(p.color for p in hummingbird65.plaquettes)
        assert colors == {Color.RED: 4, Color.BLUE: 2, Color.GREEN: 2}

    def test_eagle127_plaquette_count(self, eagle127):
        """Exhaustive hexagon enumeration over the 127-qubit coupling map gives 18."""
        assert len(eagle127.plaquettes) == 18
        assert len(eagle127.active_qubits) >= 100, "eagle127 should activate at least 100 qubits"
        assert {p.color for p in eagle127.plaquettes} == set(Color)

    @pytest.mark.parametrize("name,qubits,edges", [
        ("falcon27", 27, 28),
        ("hummingbird65", 65, 72),
        ("eagle127", 127, 144),
    ])
    def test_coupling_map_size(self, name, qubits, edges):
        """Device maps reproduce the published qubit and edge counts."""
        device = get_device(name)
        assert device.num_qubits == qubits
        assert len(device.coupling()) == edges, f"{name} should have {edges} couplings"

    def test_qubit_ids_are_physical_indices(self):
        for name in DEVICE_NAMES:
            layout = build_layout(name)
            assert sorted(layout.qubits) == list(range(get_device(name).num_qubits))

    def test_device_map_is_immutable(self):
        device = get_device("falcon27")
        with pytest.raises(ValidationError):
            device.name = "falcon28"
        assert all(isinstance(coord, tuple) and len(coord) == 2 for coord in device.positions.values())

    def test_unknown_device_rejected(self):
        with pytest.raises(LayoutError):
            build_layout("condor1121")


class TestPatches:
    """Tests for rectangular patches."""

    def test_single_plaquette(self, patch11):
        """(1,1) -> 1 plaquette, 6 code qubits, 6 auxiliary qubits."""
        assert len(patch11.plaquettes) == 1
        assert len(patch11.code_qubits) == 6
        assert len(patch11.aux_qubits) == 6
        assert patch11.plaquettes[0].color == Color.GREEN

    def test_adjacent_plaquettes_share_one_link(self):
        """(1,2) -> two plaquettes sharing exactly 2 code qubits through one link."""
        layout = build_patch(1, 2)
        first, second = layout.plaquettes
        assert len(set(first.vertices) & set(second.vertices)) == 2
        assert len(set(first.boundary) & set(second.boundary)) == 1

    def test_two_by_two_uses_all_colors(self, patch22):
        assert len(patch22.plaquettes) == 4
        assert {p.color for p in patch22.plaquettes} == set(Color)

    def test_patch_ids_are_consecutive(self, patch22):
        assert sorted(patch22.qubits) == list(range(len(patch22.qubits)))

    def test_resolve_patch_name(self):
        layout = resolve_layout("patch:2x3")
        assert layout.name == "patch:2x3"
        assert len(layout.plaquettes) == 6

    @pytest.mark.parametrize("rows,cols", [(0, 1), (1, 0)])
    def test_invalid_dimensions(self, rows, cols):
        with pytest.raises(LayoutError):
            build_patch(rows, cols)


class TestColoringInvariants:
    """Tests for the link and plaquette invariants."""

    @pytest.mark.parametrize("name", [*NAMED_LAYOUTS, "patch:1x1", "patch:2x2", "patch:3x4"])
    def test_layouts_validate(self, name):
        violations = validate_coloring(resolve_layout(name))
        assert violations == [], f"{name}: {[str(v) for v in violations]}"

    @pytest.mark.parametrize("name", [*NAMED_LAYOUTS, "patch:2x2"])
    def test_boundary_holds_three_links_per_other_color(self, name):
        layout = resolve_layout(name)
        for plaquette in layout.plaquettes:
            colors = Counter(layout.link(lid).color for lid in plaquette.boundary)
            others = set(Color) - {plaquette.color}
            assert colors == {c: 3 for c in others}, f"plaquette {plaquette.id} boundary {colors}"

    @pytest.mark.parametrize("name", NAMED_LAYOUTS)
    def test_links_respect_roles_and_coupling(self, name):
        layout = build_layout(name)
        for link in layout.links:
            assert layout.qubits[link.aux] == QubitRole.AUXILIARY
            for q in link.endpoints:
                assert layout.qubits[q] == QubitRole.CODE
                assert layout.coupled(q, link.aux), f"link {link.id}: {q}-{link.aux} not coupled"

    def test_recolored_link_is_reported(self, falcon27):
        """A link recolored to its bounding plaquette's color is named in the report."""
        red = falcon27.plaquettes_of_color(Color.RED)[0]
        target = falcon27.link(red.boundary[0])
        recolored = target.model_copy(update={"color": Color.RED})
        broken = falcon27.model_copy(update={
            "links": tuple(recolored if l.id == target.id else l for l in falcon27.links),
        })

        violations = validate_coloring(broken)

        assert violations, "recoloring should break the layout"
        assert any(
            v.subject == ViolationSubject.LINK and v.subject_id == target.id for v in violations
        ), "report should name the recolored link"

    def test_construction_is_deterministic(self):
        assert build_patch.__wrapped__(2, 2) == build_patch.__wrapped__(2, 2)
        assert build_layout.__wrapped__("falcon27") == build_layout("falcon27")


class TestLayoutDocuments:
    """Tests for the JSON layout document."""

    def test_export_then_import(self, hummingbird65, tmp_path):
        path = tmp_path / "hummingbird65.json"
        export_layout(hummingbird65, path)

        restored = import_layout(path)

        assert restored == hummingbird65
        assert validate_coloring(restored) == []

    def test_document_keys(self, falcon27):
        document = json.loads(export_layout(falcon27))
        assert set(document) == {"name", "qubits", "links", "plaquettes", "coupling"}
        assert document["links"][0]["color"] in {"red", "green", "blue"}
        assert isinstance(document["qubits"][0]["id"], int)

    def test_import_accepts_json_text(self, patch11):
        assert import_layout(export_layout(patch11)) == patch11

    def test_malformed_document(self):
        with pytest.raises(LayoutError):
            import_layout('{"name": "x", "qubits": "nope"}')
