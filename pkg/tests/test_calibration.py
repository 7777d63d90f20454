"""
Calibration Tests

Tests:
- Snapshot parsing and validation
- Mean error and spread over the error multiset
- Per-category noise models
- Published reference tables
"""
import numpy as np
import pytest

from hexfloquet.core.errors import CalibrationError
from hexfloquet.db.reference import COLOR_CODE_DEVICES, HONEYCOMB_DEVICES, reference_table
from hexfloquet.models.calibration import DeviceCalibration, QubitCalibration
from hexfloquet.models.codes import CodeFamily
from hexfloquet.services.calibration_service import (
    calibration_noise_model,
    error_multiset,
    idle_errors,
    idle_timescale,
    load_calibration,
    mean_error,
    save_calibration,
    summary_line,
)

SYNTHETIC_IDLE = 0.75 * (1 - (1 - 0.001 / 0.75) ** 15)


class TestLoading:
    """Tests for snapshot parsing."""

    def test_synthetic_snapshot(self, synthetic_calibration_path):
        calibration = load_calibration(synthetic_calibration_path)
        assert calibration.device == "synthetic_2q"
        assert len(calibration.qubits) == 2
        assert calibration.couplings[0].qubits == (0, 1)

    def test_minimal_snapshot(self, minimal_calibration_path):
        calibration = load_calibration(minimal_calibration_path)
        assert calibration.couplings == ()
        assert idle_timescale(calibration) == 4.0

    def test_out_of_range_cx_error(self, bad_calibration_path):
        with pytest.raises(CalibrationError) as excinfo:
            load_calibration(bad_calibration_path)
        assert "cx_error" in excinfo.value.message

    def test_missing_file(self, tmp_path):
        with pytest.raises(CalibrationError):
            load_calibration(tmp_path / "absent.json")

    def test_not_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{device:")
        with pytest.raises(CalibrationError):
            load_calibration(path)

    def test_save_and_load(self, synthetic_calibration_path, tmp_path):
        calibration = load_calibration(synthetic_calibration_path)
        path = tmp_path / "copy.json"
        save_calibration(calibration, path)
        assert load_calibration(path) == calibration


class TestMeanError:
    """Tests for <p> and sigma."""

    def test_idle_timescale_adds_longest_cx(self, synthetic_calibration_path):
        assert idle_timescale(load_calibration(synthetic_calibration_path)) == 15.0

    def test_idle_extrapolated_to_timescale(self, synthetic_calibration_path):
        errors = idle_errors(load_calibration(synthetic_calibration_path))
        assert errors == pytest.approx([SYNTHETIC_IDLE, SYNTHETIC_IDLE], abs=1e-12)

    def test_multiset_order(self, synthetic_calibration_path):
        values = error_multiset(load_calibration(synthetic_calibration_path))
        assert values[:5] == [0.01, 0.02, 0.01, 0.03, 0.02]
        assert len(values) == 7

    def test_synthetic_mean_and_sigma(self, synthetic_calibration_path):
        expected = np.array([0.01, 0.02, 0.01, 0.03, 0.02, SYNTHETIC_IDLE, SYNTHETIC_IDLE])
        mean, sigma = mean_error(load_calibration(synthetic_calibration_path))
        assert mean == pytest.approx(expected.mean(), abs=1e-12)
        assert sigma == pytest.approx(expected.std(), abs=1e-12)

    def test_uniform_snapshot_has_no_spread(self, uniform_calibration_path):
        mean, sigma = mean_error(load_calibration(uniform_calibration_path))
        assert mean == pytest.approx(0.01, abs=1e-12)
        assert sigma == pytest.approx(0.0, abs=1e-12)

    def test_no_qubits(self):
        calibration = DeviceCalibration(device="empty", qubits=(), meas_duration=1.0)
        with pytest.raises(CalibrationError):
            mean_error(calibration)

    def test_summary_line(self, uniform_calibration_path):
        assert summary_line(load_calibration(uniform_calibration_path)) == "uniform_2q,1.00%,0.00%"


class TestNoiseModel:
    """Tests for the per-category model of a snapshot."""

    def test_uniform_snapshot(self, uniform_calibration_path):
        model = calibration_noise_model(load_calibration(uniform_calibration_path))
        assert model.p_prep == pytest.approx(0.01)
        assert model.p_meas == pytest.approx(0.01)
        assert model.p_cx == pytest.approx(0.01)
        assert model.p_idle == pytest.approx(0.01)

    def test_category_means(self, synthetic_calibration_path):
        model = calibration_noise_model(load_calibration(synthetic_calibration_path))
        assert model.p_prep == pytest.approx(0.015)
        assert model.p_meas == pytest.approx(0.02)
        assert model.p_cx == pytest.approx(0.02)
        assert model.p_idle == pytest.approx(SYNTHETIC_IDLE)

    def test_zero_snapshot_gives_zero_model(self):
        qubit = QubitCalibration(qubit=0, prob_meas1_prep0=0.0, readout_error=0.0, id_error=0.0, id_duration=1.0)
        calibration = DeviceCalibration(device="ideal", qubits=(qubit,), meas_duration=1.0)
        assert calibration_noise_model(calibration).is_zero

    def test_no_couplings_means_no_cx_error(self, minimal_calibration_path):
        assert calibration_noise_model(load_calibration(minimal_calibration_path)).p_cx == 0.0


class TestReferenceTables:
    """Tests for the published device tables."""

    def test_honeycomb_table(self):
        hanoi = HONEYCOMB_DEVICES[0]
        assert (hanoi.device, hanoi.mean_percent, hanoi.sigma_percent) == ("ibm_hanoi", 1.32, 1.39)
        assert len(HONEYCOMB_DEVICES) == 9

    def test_tables_sorted_by_mean(self):
        for table in (HONEYCOMB_DEVICES, COLOR_CODE_DEVICES):
            means = [entry.mean_percent for entry in table]
            assert means == sorted(means)

    def test_table_lookup(self):
        assert reference_table(CodeFamily.COLOR) is COLOR_CODE_DEVICES
        assert reference_table(CodeFamily.HONEYCOMB) is HONEYCOMB_DEVICES
