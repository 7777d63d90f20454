"""
ShotTable: measurement outcomes of many shots, shots x records.

Binary file layout (little-endian):
    magic   4 bytes  b"FQST"
    version uint16   1
    shots   uint64
    records uint64
    bits    row-major shots x records, packed 8 per byte, most significant bit first,
            last byte zero-padded
CSV alternative: one line per shot of '0'/'1' characters.
"""
import struct
from pathlib import Path
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from hexfloquet.core.errors import SimulationError

MAGIC = b"FQST"
VERSION = 1
_HEADER = struct.Struct("<4sHQQ")


class ShotTable(BaseModel):
    """Outcome bits of a batch of shots."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    bits: np.ndarray
    seed: Optional[int] = None
    fingerprint: Optional[str] = None
    engine: str = "frame"

    @field_validator("bits")
    @classmethod
    def two_dimensional(cls, v: np.ndarray) -> np.ndarray:
        if v.ndim != 2:
            raise ValueError("bits must be a shots x records matrix")
        return np.ascontiguousarray(v, dtype=np.uint8)

    @property
    def shots(self) -> int:
        return int(self.bits.shape[0])

    @property
    def num_records(self) -> int:
        return int(self.bits.shape[1])

    def same_bits(self, other: "ShotTable") -> bool:
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))


def to_binary(table: ShotTable) -> bytes:
    header = _HEADER.pack(MAGIC, VERSION, table.shots, table.num_records)
    return header + np.packbits(table.bits.reshape(-1)).tobytes()


def from_binary(data: bytes) -> ShotTable:
    if len(data) < _HEADER.size:
        raise SimulationError("shot file is shorter than its header")
    magic, version, shots, records = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise SimulationError(f"not a shot file (magic {magic!r})")
    if version != VERSION:
        raise SimulationError(f"unsupported shot file version {version}")
    count = shots * records
    payload = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    if payload.size != (count + 7) // 8:
        raise SimulationError("shot file payload does not match its header")
    bits = np.unpackbits(payload, count=count).reshape(shots, records)
    return ShotTable(bits=bits)


def write_binary(table: ShotTable, path: Union[str, Path]) -> None:
    Path(path).write_bytes(to_binary(table))


def read_binary(path: Union[str, Path]) -> ShotTable:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise SimulationError(f"cannot read shot file: {e}") from e
    return from_binary(data)


def to_csv(table: ShotTable) -> str:
    chars = np.where(table.bits.astype(bool), "1", "0")
    return "".join("".join(row) + "\n" for row in chars)


def write_csv(table: ShotTable, path: Union[str, Path]) -> None:
    Path(path).write_text(to_csv(table), encoding="utf-8")


def read_csv(path: Union[str, Path]) -> ShotTable:
    lines = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines:
        raise SimulationError("shot CSV is empty")
    width = len(lines[0])
    if any(len(line) != width or set(line) - {"0", "1"} for line in lines):
        raise SimulationError("shot CSV rows must be equal-length strings of 0 and 1")
    bits = np.array([[c == "1" for c in line] for line in lines], dtype=np.uint8)
    return ShotTable(bits=bits)
