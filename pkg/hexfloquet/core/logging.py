"""
Structured logging for experiment traceability.
Every build, simulation and report step is logged as one JSON object per line.

Events go to standard error so that standard output carries only results.
"""
import json
import logging
import sys
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Optional

import numpy as np

from hexfloquet.core.config import settings


class NumpyEncoder(json.JSONEncoder):
    """JSON encoder that handles numpy scalars, arrays and enums."""

    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, (set, frozenset, tuple)):
            return list(obj)
        return super().default(obj)


class EventLogger:
    """
    Event logger for tracking every pipeline stage.
    Logs are structured JSON for easy parsing and analysis.
    """

    def __init__(self, name: str = "hexfloquet", level: Optional[str] = None):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        if not self.logger.handlers:
            if settings.LOG_FILE:
                handler: logging.Handler = logging.FileHandler(settings.LOG_FILE)
            else:
                handler = logging.StreamHandler(sys.stderr)
            handler.setLevel((level or settings.LOG_LEVEL).upper())
            handler.setFormatter(logging.Formatter("%(message)s"))
            self.logger.addHandler(handler)

    def set_level(self, level: str) -> None:
        """Change the threshold of every attached handler."""
        for handler in self.logger.handlers:
            handler.setLevel(level.upper())

    def _log(
        self,
        level: str,
        event: str,
        target_type: Optional[str] = None,
        target_id: Optional[Any] = None,
        details: Optional[dict[str, Any]] = None,
        error: Optional[str] = None,
    ) -> None:
        """Internal logging method that produces structured JSON."""
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "event": event,
            "target": {
                "type": target_type,
                "id": target_id,
            } if target_type else None,
            "details": details,
            "error": error,
        }

        # Remove None values for cleaner logs
        log_entry = {k: v for k, v in log_entry.items() if v is not None}

        log_method = getattr(self.logger, level.lower())
        log_method(json.dumps(log_entry, cls=NumpyEncoder))

    def debug(
        self,
        event: str,
        target_type: Optional[str] = None,
        target_id: Optional[Any] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        """Log a debug event."""
        self._log("DEBUG", event, target_type, target_id, details)

    def info(
        self,
        event: str,
        target_type: Optional[str] = None,
        target_id: Optional[Any] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        """Log an informational event."""
        self._log("INFO", event, target_type, target_id, details)

    def warning(
        self,
        event: str,
        target_type: Optional[str] = None,
        target_id: Optional[Any] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        """Log a warning event."""
        self._log("WARNING", event, target_type, target_id, details)

    def error(
        self,
        event: str,
        error: str,
        target_type: Optional[str] = None,
        target_id: Optional[Any] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        """Log an error event."""
        self._log("ERROR", event, target_type, target_id, details, error)

    # Specific pipeline events
    def log_layout_built(self, name: str, qubits: int, links: int, plaquettes: int) -> None:
        """Log a layout construction."""
        self.info(
            "layout.built",
            target_type="layout",
            target_id=name,
            details={"qubits": qubits, "links": links, "plaquettes": plaquettes},
        )

    def log_circuit_scheduled(
        self,
        layout: str,
        rounds: int,
        reset_aux: bool,
        instructions: int,
        records: int,
    ) -> None:
        """Log a round schedule compiled into a circuit."""
        self.info(
            "circuit.scheduled",
            target_type="layout",
            target_id=layout,
            details={
                "rounds": rounds,
                "reset_aux": reset_aux,
                "instructions": instructions,
                "records": records,
            },
        )

    def log_simulation(
        self,
        engine: str,
        fingerprint: str,
        shots: int,
        base_seed: int,
        threads: int,
    ) -> None:
        """Log a completed batch of shots."""
        self.info(
            "simulation.completed",
            target_type="circuit",
            target_id=fingerprint[:16],
            details={
                "engine": engine,
                "shots": shots,
                "base_seed": base_seed,
                "threads": threads,
            },
        )

    def log_experiment(
        self,
        code: str,
        layout: str,
        p: Optional[float],
        shots: int,
        mean: Optional[float],
    ) -> None:
        """Log one finished experiment point."""
        self.info(
            "experiment.completed",
            target_type="layout",
            target_id=layout,
            details={"code": code, "p": p, "shots": shots, "mean": mean},
        )


# Global event logger instance
event_log = EventLogger()
