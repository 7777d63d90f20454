"""
Pytest fixtures for the hexfloquet test suite.
Provides prebuilt layouts, prepared experiments and calibration fixture paths.
"""
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from hexfloquet.models.codes import CodeFamily
from hexfloquet.models.lattice import Layout, PauliType
from hexfloquet.services.experiment_service import PreparedExperiment, prepare
from hexfloquet.services.lattice_service import build_layout, build_patch


FIXTURES = Path(__file__).parent / "fixtures"

NAMED_LAYOUTS = ("falcon27", "hummingbird65", "eagle127")


# ============ Layouts ============

@pytest.fixture(scope="session")
def falcon27() -> Layout:
    return build_layout("falcon27")


@pytest.fixture(scope="session")
def hummingbird65() -> Layout:
    return build_layout("hummingbird65")


@pytest.fixture(scope="session")
def eagle127() -> Layout:
    return build_layout("eagle127")


@pytest.fixture(scope="session")
def patch11() -> Layout:
    """A single green plaquette."""
    return build_patch(1, 1)


@pytest.fixture(scope="session")
def patch22() -> Layout:
    return build_patch(2, 2)


@pytest.fixture(scope="session")
def z_link(patch11):
    """Some z-type link of the single-plaquette patch."""
    return next(link for link in patch11.links if link.pauli_type == PauliType.Z)


@pytest.fixture(scope="session")
def x_link(patch11):
    return next(link for link in patch11.links if link.pauli_type == PauliType.X)


# ============ Experiments ============

@pytest.fixture(scope="session")
def honeycomb_falcon(falcon27) -> PreparedExperiment:
    """7-round honeycomb schedule on falcon27, auxiliaries reset."""
    return prepare(CodeFamily.HONEYCOMB, falcon27, reset_aux=True)


@pytest.fixture(scope="session")
def color_falcon(falcon27) -> PreparedExperiment:
    """10-round Color-code schedule on falcon27, auxiliaries reset."""
    return prepare(CodeFamily.COLOR, falcon27, reset_aux=True)


@pytest.fixture(scope="session")
def honeycomb_patch11(patch11) -> PreparedExperiment:
    """7 honeycomb rounds on one plaquette; the green rounds emit nothing."""
    return prepare(CodeFamily.HONEYCOMB, patch11, reset_aux=True, allow_empty_rounds=True)


# ============ Calibration fixtures ============

@pytest.fixture
def synthetic_calibration_path() -> Path:
    """2 qubits, prep {0.01, 0.02}, meas {0.01, 0.03}, one CX 0.02, p_id 0.001, t_id 1, t_meas 10, t_cx 5."""
    return FIXTURES / "calibration_synthetic.json"


@pytest.fixture
def minimal_calibration_path() -> Path:
    return FIXTURES / "calibration_minimal.json"


@pytest.fixture
def uniform_calibration_path() -> Path:
    """Every probability 0.01 and idle timescale equal to t_id."""
    return FIXTURES / "calibration_uniform.json"


@pytest.fixture
def bad_calibration_path() -> Path:
    return FIXTURES / "calibration_bad_cx.json"


@pytest.fixture
def sweep_config_path() -> Path:
    return FIXTURES / "sweep_config.json"
