"""
Analysis Tests

Tests:
- Detector parities and detection rates on hand-made shot tables
- Aggregate bars and report writers
- Statistical properties of simulated detection rates
- Configured sweeps
"""
import csv
import io
import json

import numpy as np
import pytest

from hexfloquet.core.errors import AnalysisError, UsageError
from hexfloquet.engine.shots import ShotTable
from hexfloquet.models.codes import CodeFamily, Detector, RoundBasis
from hexfloquet.models.lattice import Color
from hexfloquet.models.noise import NoiseModel
from hexfloquet.schemas.report_schemas import DetectionReport, PlaquetteRate, RunMetadata, SweepConfig
from hexfloquet.services.analysis_service import (
    CSV_COLUMNS,
    aggregate_bars,
    binomial_stderr,
    detection_rates,
    detector_parities,
    reports_to_csv,
    reports_to_json,
)
from hexfloquet.services.experiment_service import ExperimentService, prepare, run_point, sweep
from hexfloquet.services.lattice_service import resolve_layout
from tests.conftest import NAMED_LAYOUTS


def detector(id, plaquette_id, records, basis=RoundBasis.NATIVE, color=Color.RED):
    return Detector(id=id, plaquette_id=plaquette_id, color=color, basis=basis, records=tuple(records), rounds=(1, 4))


def report_with_rates(rates):
    plaquettes = [
        PlaquetteRate(plaquette_id=i, color=Color.RED, basis=RoundBasis.NATIVE, rate=r, stderr=0.0, detectors=1)
        for i, r in enumerate(rates)
    ]
    return DetectionReport(metadata=RunMetadata(shots=1), detector_rates=[], plaquette_rates=plaquettes)


class TestDetectionRates:
    """Tests for rates computed from fixed shot tables."""

    def test_parities_xor_records(self):
        bits = np.array([[1, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=np.uint8)
        parities = detector_parities(ShotTable(bits=bits), [detector(0, 0, [0, 1]), detector(1, 0, [2])])
        assert parities.tolist() == [[0, 0], [1, 0], [0, 1]]

    def test_rates_and_stderr(self):
        bits = np.array([[1], [0], [0], [1]], dtype=np.uint8)
        report = detection_rates(ShotTable(bits=bits), [detector(0, 0, [0])])

        assert report.detector_rates[0].rate == 0.5
        assert report.detector_rates[0].stderr == pytest.approx(0.25)
        assert (report.mean, report.min, report.max) == (0.5, 0.5, 0.5)

    def test_plaquette_rate_is_mean_over_its_detectors(self):
        bits = np.array([[1, 0], [1, 0], [0, 0], [1, 1]], dtype=np.uint8)
        report = detection_rates(ShotTable(bits=bits), [detector(0, 5, [0]), detector(1, 5, [1])])

        (plaquette,) = report.plaquette_rates
        assert plaquette.rate == pytest.approx((0.75 + 0.25) / 2)
        assert plaquette.detectors == 2

    def test_color_code_bases_are_separate_rows(self):
        bits = np.zeros((4, 2), dtype=np.uint8)
        detectors = [detector(0, 1, [0], RoundBasis.Z), detector(1, 1, [1], RoundBasis.X)]
        report = detection_rates(ShotTable(bits=bits), detectors)
        assert [p.basis for p in report.plaquette_rates] == [RoundBasis.X, RoundBasis.Z]

    def test_shot_order_does_not_matter(self):
        bits = np.random.default_rng(3).integers(0, 2, size=(200, 6), dtype=np.uint8)
        detectors = [detector(0, 0, [0, 3]), detector(1, 1, [1, 2, 5])]
        shuffled = bits[np.random.default_rng(4).permutation(200)]

        a = detection_rates(ShotTable(bits=bits), detectors)
        b = detection_rates(ShotTable(bits=shuffled), detectors)

        assert [r.rate for r in a.detector_rates] == [r.rate for r in b.detector_rates]

    def test_record_out_of_range(self):
        with pytest.raises(AnalysisError):
            detection_rates(ShotTable(bits=np.zeros((3, 2), dtype=np.uint8)), [detector(0, 0, [0, 2])])

    def test_empty_table(self):
        with pytest.raises(AnalysisError):
            detection_rates(ShotTable(bits=np.zeros((0, 2), dtype=np.uint8)), [detector(0, 0, [0])])

    def test_binomial_stderr(self):
        assert binomial_stderr(0.5, 100) == pytest.approx(0.05)
        assert binomial_stderr(0.0, 100) == 0.0


class TestAggregates:
    """Tests for mean/min/max bars."""

    def test_three_plaquettes(self):
        mean, low, high = aggregate_bars(report_with_rates([0.1, 0.2, 0.3]))
        assert mean == pytest.approx(0.2)
        assert (low, high) == (0.1, 0.3)

    def test_single_plaquette(self):
        assert aggregate_bars(report_with_rates([0.25])) == (0.25, 0.25, 0.25)

    def test_empty_report(self):
        with pytest.raises(AnalysisError):
            aggregate_bars(report_with_rates([]))


class TestWriters:
    """Tests for the CSV and JSON report documents."""

    @pytest.fixture(scope="class")
    def reports(self, honeycomb_falcon):
        return [run_point(honeycomb_falcon, NoiseModel.uniform(p), 200, base_seed=1)[0] for p in (0.0, 0.01)]

    def test_csv_layout(self, reports):
        text = reports_to_csv(reports, header=[("code", "honeycomb"), ("shots", "200")])
        lines = text.splitlines()

        assert lines[0].startswith("# generator=hexfloquet")
        assert lines[1:3] == ["# code=honeycomb", "# shots=200"]
        rows = list(csv.reader(io.StringIO("\n".join(lines[3:]))))
        assert rows[0] == CSV_COLUMNS
        assert len(rows) == 1 + 2 * (2 + 1), "two plaquette rows and one ALL row per report"
        assert [r[6] for r in rows[1:4]] == ["0", "1", "ALL"]

    def test_aggregate_only(self, reports):
        rows = [line for line in reports_to_csv(reports, aggregate_only=True).splitlines() if not line.startswith("#")]
        assert len(rows) == 1 + 2
        assert all(row.split(",")[6] == "ALL" for row in rows[1:])

    def test_metadata_cells(self, reports):
        row = next(csv.reader(io.StringIO(reports_to_csv(reports[1:]).splitlines()[-1])))
        assert row[:6] == ["honeycomb", "falcon27", "true", "0.01", "200", "1"]

    def test_json_mirror(self, reports):
        document = json.loads(reports_to_json(reports, header=[("layout", "falcon27")]))
        assert document["config"] == {"layout": "falcon27"}
        assert len(document["reports"]) == 2
        assert document["reports"][0]["mean"] == 0.0


class TestNoiselessNullity:
    """Without noise no detector ever fires."""

    @pytest.mark.slow
    @pytest.mark.parametrize("name", NAMED_LAYOUTS)
    @pytest.mark.parametrize("code", [CodeFamily.HONEYCOMB, CodeFamily.COLOR])
    @pytest.mark.parametrize("reset_aux", [True, False])
    def test_zero_noise_rates_vanish(self, name, code, reset_aux):
        prepared = prepare(code, resolve_layout(name), reset_aux=reset_aux)
        report, _ = run_point(prepared, NoiseModel.uniform(0.0), 1000, base_seed=17)
        assert report.max == 0.0

    def test_zero_noise_falcon27(self, honeycomb_falcon, color_falcon):
        for prepared in (honeycomb_falcon, color_falcon):
            report, _ = run_point(prepared, NoiseModel(), 300, base_seed=17)
            assert report.max == 0.0


class TestNoiseResponse:
    """Detection rates as a function of p."""

    @pytest.mark.slow
    @pytest.mark.parametrize("code", [CodeFamily.HONEYCOMB, CodeFamily.COLOR])
    def test_monotone_in_p(self, falcon27, code):
        """Strict up to p=0.1; from 0.1 to 0.2 rates sit at saturation near 1/2, so that step gets 2 sigma."""
        reports = sweep(code, falcon27, [0.001, 0.01, 0.05, 0.1, 0.2], 20_000, base_seed=5)
        means = [r.mean for r in reports]
        for low, high in zip(means[:4], means[1:4]):
            assert high > low, f"means {means}"
        tail_sigma = 2 * (reports[3].mean_stderr ** 2 + reports[4].mean_stderr ** 2) ** 0.5
        assert means[4] >= means[3] - tail_sigma

    @pytest.mark.slow
    def test_saturation(self, honeycomb_falcon):
        report, _ = run_point(honeycomb_falcon, NoiseModel.uniform(0.25), 100_000, base_seed=6)
        for rate in report.plaquette_rates:
            assert abs(rate.rate - 0.5) < 0.05

    @pytest.mark.slow
    def test_color_code_detects_less_than_honeycomb(self, honeycomb_falcon, color_falcon):
        """Color-code detectors span fewer records, so they fire less often at equal p."""
        model = NoiseModel.uniform(0.02)
        honeycomb, _ = run_point(honeycomb_falcon, model, 100_000, base_seed=7)
        color, _ = run_point(color_falcon, model, 100_000, base_seed=7)
        sigma = (honeycomb.mean_stderr ** 2 + color.mean_stderr ** 2) ** 0.5
        assert color.mean <= honeycomb.mean + 2 * sigma

    @pytest.mark.parametrize("prepared_name", ["honeycomb_falcon", "color_falcon"])
    def test_doubling_shots_keeps_rates(self, request, prepared_name):
        """The first n shots of a 2n run are the n-shot run, so rates move by well under 3 sigma."""
        prepared = request.getfixturevalue(prepared_name)
        model = NoiseModel.uniform(0.02)
        single, _ = run_point(prepared, model, 5_000, base_seed=12)
        double, _ = run_point(prepared, model, 10_000, base_seed=12)

        for a, b in zip(single.detector_rates, double.detector_rates):
            assert a.detector_id == b.detector_id
            assert abs(a.rate - b.rate) <= 3 * a.stderr, f"D{a.detector_id}: {a.rate} vs {b.rate}"

    def test_bars_over_hummingbird(self, hummingbird65):
        prepared = prepare(CodeFamily.HONEYCOMB, hummingbird65)
        report, _ = run_point(prepared, NoiseModel.uniform(0.01), 500, base_seed=8)

        assert len(report.plaquette_rates) == 8
        assert report.min <= report.mean <= report.max
        assert report.max > 0.0


class TestSweeps:
    """Configured sweeps go through the same per-code sweep as library callers."""

    def test_service_matches_library_sweep(self, falcon27):
        config = SweepConfig(layout="falcon27", codes=["honeycomb", "color"], p_values=[0.0, 0.02], shots=300, seed=9)
        reports = ExperimentService().sweep(config)

        expected = [
            report
            for code in (CodeFamily.HONEYCOMB, CodeFamily.COLOR)
            for report in sweep(code, falcon27, [0.0, 0.02], 300, base_seed=9)
        ]
        assert [r.metadata.code for r in reports] == [r.metadata.code for r in expected]
        assert [r.mean for r in reports] == [r.mean for r in expected]

    def test_empty_sweep_rejected(self):
        with pytest.raises(UsageError):
            ExperimentService().sweep(SweepConfig(layout="falcon27", p_values=[]))
