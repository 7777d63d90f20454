"""
Analysis service.
Detection rates per detector and per (plaquette, basis), aggregate bars, and
CSV/JSON report writers.
"""
import csv
import io
import json
import math
from typing import Optional, Sequence

import numpy as np

from hexfloquet.core.config import settings
from hexfloquet.core.errors import AnalysisError
from hexfloquet.engine.shots import ShotTable
from hexfloquet.models.codes import Detector, RoundBasis
from hexfloquet.schemas.report_schemas import DetectionReport, DetectorRate, PlaquetteRate, RunMetadata

CSV_COLUMNS = [
    "code", "layout", "reset", "p", "shots", "seed",
    "plaquette", "color", "basis", "rate", "stderr", "mean", "min", "max",
]

_BASIS_ORDER = {RoundBasis.NATIVE: 0, RoundBasis.X: 1, RoundBasis.Z: 2, RoundBasis.Y: 3}


def binomial_stderr(rate: float, shots: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / shots) if shots else 0.0


def detector_parities(shots: ShotTable, detectors: Sequence[Detector]) -> np.ndarray:
    """(shots, detectors) matrix of record-XORs."""
    parities = np.zeros((shots.shots, len(detectors)), dtype=np.uint8)
    for j, detector in enumerate(detectors):
        bad = [r for r in detector.records if r < 0 or r >= shots.num_records]
        if bad:
            raise AnalysisError(
                f"detector D{detector.id} uses record {bad[0]} but the shot table has {shots.num_records} records"
            )
        if detector.records:
            parities[:, j] = np.bitwise_xor.reduce(shots.bits[:, list(detector.records)], axis=1)
    return parities


def aggregate_bars(report: DetectionReport) -> tuple[float, float, float]:
    """(mean, min, max) over the plaquette-level rates."""
    if not report.plaquette_rates:
        raise AnalysisError("report has no plaquette rates to aggregate")
    rates = [p.rate for p in report.plaquette_rates]
    return float(np.mean(rates)), float(min(rates)), float(max(rates))


def detection_rates(
    shots: ShotTable,
    detectors: Sequence[Detector],
    metadata: Optional[RunMetadata] = None,
) -> DetectionReport:
    """
    rate(d) = fraction of shots whose record-XOR over d is 1.
    A plaquette's rate is the mean over its detectors of one basis.
    """
    if shots.shots < 1:
        raise AnalysisError("shot table is empty")
    parities = detector_parities(shots, detectors)
    n = shots.shots

    detector_rates = []
    for j, detector in enumerate(detectors):
        rate = float(parities[:, j].sum()) / n
        detector_rates.append(DetectorRate(
            detector_id=detector.id,
            plaquette_id=detector.plaquette_id,
            color=detector.color,
            basis=detector.basis,
            rate=rate,
            stderr=binomial_stderr(rate, n),
        ))

    groups: dict[tuple[int, RoundBasis], list[DetectorRate]] = {}
    for rate in detector_rates:
        groups.setdefault((rate.plaquette_id, rate.basis), []).append(rate)

    plaquette_rates = []
    for (plaquette_id, basis) in sorted(groups, key=lambda k: (k[0], _BASIS_ORDER[k[1]])):
        members = groups[(plaquette_id, basis)]
        plaquette_rates.append(PlaquetteRate(
            plaquette_id=plaquette_id,
            color=members[0].color,
            basis=basis,
            rate=float(np.mean([m.rate for m in members])),
            stderr=math.sqrt(sum(m.stderr ** 2 for m in members)) / len(members),
            detectors=len(members),
        ))

    report = DetectionReport(
        metadata=metadata or RunMetadata(shots=n, seed=shots.seed),
        detector_rates=detector_rates,
        plaquette_rates=plaquette_rates,
    )
    if plaquette_rates:
        mean, low, high = aggregate_bars(report)
        report = report.model_copy(update={
            "mean": mean,
            "min": low,
            "max": high,
            "mean_stderr": math.sqrt(sum(p.stderr ** 2 for p in plaquette_rates)) / len(plaquette_rates),
        })
    return report


# ============ Writers ============

def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.6f}"


def _meta_cells(meta: RunMetadata) -> list[str]:
    return [
        meta.code.value if meta.code else "",
        meta.layout or "",
        "" if meta.reset_aux is None else str(meta.reset_aux).lower(),
        "" if meta.p is None else repr(float(meta.p)),
        str(meta.shots),
        "" if meta.seed is None else str(meta.seed),
    ]


def report_rows(report: DetectionReport) -> list[list[str]]:
    """One row per (plaquette, basis) and a final plaquette=ALL aggregate row."""
    meta = _meta_cells(report.metadata)
    rows = [
        meta + [str(p.plaquette_id), p.color.value, p.basis.value, _fmt(p.rate), _fmt(p.stderr), "", "", ""]
        for p in report.plaquette_rates
    ]
    if report.mean is not None:
        rows.append(meta + [
            "ALL", "", "", _fmt(report.mean), _fmt(report.mean_stderr),
            _fmt(report.mean), _fmt(report.min), _fmt(report.max),
        ])
    return rows


def _header_lines(header: Sequence[tuple[str, str]]) -> str:
    items = [("generator", f"{settings.APP_NAME} {settings.APP_VERSION}"), *header]
    return "".join(f"# {key}={value}\n" for key, value in items)


def reports_to_csv(
    reports: Sequence[DetectionReport],
    header: Sequence[tuple[str, str]] = (),
    aggregate_only: bool = False,
) -> str:
    """CSV document: '# key=value' config lines, column header, rows."""
    buffer = io.StringIO()
    buffer.write(_header_lines(header))
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        for row in report_rows(report):
            if aggregate_only and row[6] != "ALL":
                continue
            writer.writerow(row)
    return buffer.getvalue()


def reports_to_json(reports: Sequence[DetectionReport], header: Sequence[tuple[str, str]] = ()) -> str:
    """JSON mirror of the CSV: config mapping plus the full reports."""
    document = {
        "generator": f"{settings.APP_NAME} {settings.APP_VERSION}",
        "config": dict(header),
        "reports": [report.model_dump(mode="json") for report in reports],
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"
