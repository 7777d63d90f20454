"""
Command-Line Tests

End-to-end runs of every subcommand through main(argv), checking standard
output, written files and exit statuses.
"""
import csv
import io
import json

import pytest

from hexfloquet.main import main

pytestmark = pytest.mark.integration


def data_rows(text: str) -> list[list[str]]:
    """CSV rows after the '#' config lines, column header excluded."""
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    return list(csv.reader(io.StringIO(body)))[1:]


class TestRun:
    """Tests for `run`."""

    def test_noiseless_run(self, capsys):
        status = main(["run", "--code", "honeycomb", "--layout", "falcon27", "--p", "0", "--shots", "1000"])
        out = capsys.readouterr().out

        assert status == 0
        assert out.startswith("honeycomb falcon27 reset=true p=0.0 shots=1000")
        assert "mean=0.0000 min=0.0000 max=0.0000" in out

    def test_seed_reproduces_file(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            assert main(["run", "--layout", "falcon27", "--p", "0.02", "--shots", "500",
                         "--seed", "7", "--output", str(path)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_thread_count_does_not_change_output(self, tmp_path):
        texts = []
        for threads in ("1", "4", "8"):
            path = tmp_path / f"t{threads}.csv"
            main(["run", "--layout", "falcon27", "--p", "0.02", "--shots", "2000",
                  "--seed", "3", "--threads", threads, "--output", str(path)])
            texts.append(path.read_text())
        assert texts[0] == texts[1] == texts[2]

    def test_color_code_rows(self, tmp_path):
        path = tmp_path / "color.csv"
        assert main(["run", "--code", "color", "--layout", "hummingbird65", "--p", "0.01",
                     "--shots", "300", "--output", str(path)]) == 0
        rows = data_rows(path.read_text())

        plaquette_rows = [r for r in rows if r[6] != "ALL"]
        assert len(plaquette_rows) == 16, "8 plaquettes x 2 bases"
        assert {r[8] for r in plaquette_rows} == {"x", "z"}
        assert rows[-1][6] == "ALL"

    def test_report_to_stdout(self, capsys):
        main(["run", "--layout", "falcon27", "--p", "0.01", "--shots", "100", "--output", "-"])
        out = capsys.readouterr().out
        assert out.startswith("# generator=")
        assert "mean=" not in out

    def test_json_report(self, tmp_path):
        path = tmp_path / "run.json"
        main(["run", "--layout", "falcon27", "--p", "0.01", "--shots", "100", "--json", "--output", str(path)])
        document = json.loads(path.read_text())
        assert document["config"]["layout"] == "falcon27"
        assert document["config"]["rounds"] == "7"
        assert len(document["reports"][0]["plaquette_rates"]) == 2

    def test_per_category_noise(self, capsys):
        assert main(["run", "--layout", "falcon27", "--p-cx", "0.02", "--p-meas", "0.01", "--shots", "100"]) == 0
        assert "p=0.0075" in capsys.readouterr().out

    def test_dump_shots(self, tmp_path):
        path = tmp_path / "shots.bin"
        main(["run", "--layout", "falcon27", "--p", "0.01", "--shots", "64", "--dump-shots", str(path)])
        assert path.read_bytes()[:4] == b"FQST"

    def test_no_reset_flag(self, capsys):
        main(["run", "--layout", "falcon27", "--no-reset", "--p", "0", "--shots", "200"])
        assert "reset=false" in capsys.readouterr().out


class TestRunErrors:
    """Exit statuses for bad input."""

    def test_probability_out_of_range(self):
        assert main(["run", "--p", "1.5"]) == 2

    def test_p_and_per_category_conflict(self, capsys):
        assert main(["run", "--p", "0.01", "--p-cx", "0.02", "--shots", "10"]) == 2
        assert capsys.readouterr().err.strip().endswith("not both")

    def test_unknown_layout(self, capsys):
        assert main(["run", "--layout", "condor1121", "--shots", "10"]) == 1
        assert "unknown device" in capsys.readouterr().err

    def test_too_few_rounds(self):
        assert main(["run", "--layout", "falcon27", "--rounds", "5", "--shots", "10"]) == 1

    def test_missing_subcommand(self):
        assert main([]) == 2


class TestSweep:
    """Tests for `sweep`."""

    def test_empty_p_values(self):
        assert main(["sweep", "--layout", "falcon27", "--p-values"]) == 2

    def test_config_file(self, sweep_config_path, capsys):
        assert main(["sweep", "--config", str(sweep_config_path)]) == 0
        out = capsys.readouterr().out

        assert "# p_values=0.0,0.01" in out
        rows = data_rows(out)
        assert [r[3] for r in rows] == ["0.0", "0.01"]
        assert rows[0][9] == "0.000000"

    def test_flags_override_config(self, sweep_config_path, capsys):
        main(["sweep", "--config", str(sweep_config_path), "--p-values", "0.02", "--shots", "100"])
        rows = data_rows(capsys.readouterr().out)
        assert [(r[3], r[4]) for r in rows] == [("0.02", "100")]

    def test_both_codes(self, capsys):
        main(["sweep", "--layout", "falcon27", "--code", "honeycomb", "--code", "color",
              "--p-values", "0.01,0.02", "--shots", "100"])
        rows = data_rows(capsys.readouterr().out)
        assert [(r[0], r[3]) for r in rows] == [
            ("honeycomb", "0.01"), ("honeycomb", "0.02"), ("color", "0.01"), ("color", "0.02"),
        ]

    def test_per_plaquette(self, capsys):
        main(["sweep", "--layout", "falcon27", "--p-values", "0.01", "--shots", "100", "--per-plaquette"])
        rows = data_rows(capsys.readouterr().out)
        assert [r[6] for r in rows] == ["0", "1", "ALL"]

    def test_color_sweep_header(self, capsys):
        main(["sweep", "--code", "color", "--layout", "falcon27", "--p-values", "0.01", "--shots", "50"])
        header = [line for line in capsys.readouterr().out.splitlines() if line.startswith("#")]

        assert "# codes=color" in header
        assert "# rounds=color:10" in header
        assert not any(line.startswith("# code=") for line in header), "codes replaces code"

    def test_header_regenerates_sweep_row(self, tmp_path, capsys):
        """A run built from the sweep header reproduces the sweep's aggregate row."""
        main(["sweep", "--code", "color", "--layout", "falcon27", "--p-values", "0.01",
              "--shots", "200", "--seed", "4"])
        out = capsys.readouterr().out
        header = dict(line[2:].split("=", 1) for line in out.splitlines() if line.startswith("# ") and "=" in line)
        code, rounds = header["rounds"].split(":")

        path = tmp_path / "run.csv"
        assert main(["run", "--code", code, "--rounds", rounds, "--layout", header["layout"],
                     "--p", header["p_values"], "--shots", header["shots"], "--seed", header["seed"],
                     "--output", str(path)]) == 0
        assert data_rows(path.read_text())[-1] == data_rows(out)[-1]

    def test_rounds_listed_per_code(self, capsys):
        main(["sweep", "--layout", "falcon27", "--code", "honeycomb", "--code", "color",
              "--p-values", "0.01", "--shots", "50"])
        assert "# rounds=honeycomb:7,color:10" in capsys.readouterr().out.splitlines()

    def test_explicit_rounds_in_header(self, capsys):
        main(["sweep", "--layout", "falcon27", "--rounds", "8", "--p-values", "0.01", "--shots", "50"])
        header = capsys.readouterr().out.splitlines()
        assert "# rounds=honeycomb:8" in header
        assert "# codes=honeycomb" in header


class TestDetectors:
    """Tests for `detectors`."""

    def test_falcon27_honeycomb(self, capsys):
        assert main(["detectors", "--code", "honeycomb", "--layout", "falcon27"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert all(line.startswith(f"D{i} plaquette=") for i, line in enumerate(lines))

    def test_verify(self, capsys):
        assert main(["detectors", "--code", "color", "--layout", "falcon27", "--verify", "20"]) == 0
        assert "# verified 4 detectors over 20 noiseless trials" in capsys.readouterr().out

    def test_verify_zero_trials(self):
        assert main(["detectors", "--layout", "falcon27", "--verify", "0"]) == 2

    def test_circuit_export(self, tmp_path):
        path = tmp_path / "circuit.txt"
        main(["detectors", "--layout", "falcon27", "--circuit", str(path)])
        assert path.read_text().count("LAYER") == 3


class TestLayout:
    """Tests for `layout`."""

    def test_summary(self, capsys):
        assert main(["layout", "--name", "falcon27"]) == 0
        out = capsys.readouterr().out
        assert "10 code, 11 auxiliary, 6 unused qubits; 11 links; 2 plaquettes" in out

    def test_export_and_import(self, tmp_path, capsys):
        path = tmp_path / "patch.json"
        assert main(["layout", "--name", "patch:2x2", "--export", str(path)]) == 0
        assert json.loads(path.read_text())["name"] == "patch:2x2"
        capsys.readouterr()

        assert main(["layout", "--import", str(path)]) == 0
        assert capsys.readouterr().out.startswith("patch:2x2:")

    def test_name_or_import_required(self):
        assert main(["layout"]) == 2


class TestCalib:
    """Tests for `calib`."""

    def test_summarize(self, uniform_calibration_path, capsys):
        assert main(["calib", "summarize", str(uniform_calibration_path)]) == 0
        assert capsys.readouterr().out.splitlines() == ["uniform_2q,1.00%,0.00%"]

    def test_model(self, uniform_calibration_path, capsys):
        main(["calib", "model", str(uniform_calibration_path)])
        assert capsys.readouterr().out.split()[:2] == ["--p-prep", "0.01"]

    def test_reference(self, capsys):
        main(["calib", "reference", "--code", "honeycomb"])
        assert capsys.readouterr().out.splitlines()[0] == "ibm_hanoi,1.32%,1.39%,64"

    def test_bad_snapshot(self, bad_calibration_path):
        assert main(["calib", "summarize", str(bad_calibration_path)]) == 1
