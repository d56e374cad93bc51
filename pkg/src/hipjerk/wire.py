"""Codec for the ASCII angle stream ``yaw,pitch,roll#yaw,pitch,roll#...``.

Each record is three decimal floats (degrees) separated by commas and
terminated by ``#``. Parsing never raises: empty records, malformed records
and an unterminated trailing fragment are dropped and counted.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import InvalidRecord
from .so3 import AngleTriple

RECORD_END = "#"
FIELD_SEP = ","

_FLOAT = re.compile(r"[+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")


@dataclass
class ParseReport:
    records: list = field(default_factory=list)
    empty_expunged: int = 0
    malformed_skipped: int = 0
    trailing_partial: bool = False
    # records outside the device's nominal angle ranges (kept, only counted)
    out_of_range: int = 0

    def diagnostics(self) -> dict:
        return {
            "empty_expunged": self.empty_expunged,
            "malformed_skipped": self.malformed_skipped,
            "trailing_partial": self.trailing_partial,
            "out_of_range": self.out_of_range,
        }


def _parse_record(segment: str):
    fields = segment.split(FIELD_SEP)
    if len(fields) != 3:
        return None
    values = []
    for f in fields:
        f = f.strip()
        if not _FLOAT.fullmatch(f):
            return None
        x = float(f)
        if not math.isfinite(x):
            return None
        values.append(x)
    return AngleTriple(*values)


def parse_stream(raw) -> ParseReport:
    """Split a raw stream into angle records.

    ``raw`` may be ``bytes`` or ``str``. Bytes are decoded as latin-1 so that
    arbitrary input maps to characters; anything non-ASCII then fails the
    float grammar and is counted as malformed.
    """
    text = raw.decode("latin-1") if isinstance(raw, (bytes, bytearray, memoryview)) else str(raw)
    report = ParseReport()
    *segments, tail = text.split(RECORD_END)
    for seg in segments:
        if not seg.strip():
            report.empty_expunged += 1
            continue
        rec = _parse_record(seg)
        if rec is None:
            report.malformed_skipped += 1
            continue
        report.records.append(rec)
        if not rec.in_nominal_range():
            report.out_of_range += 1
    if tail.strip():
        report.trailing_partial = True
    return report


def _format(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def encode_stream(records) -> bytes:
    """Encode angle records; ``parse_stream(encode_stream(r)).records == r`` exactly."""
    parts = []
    for i, rec in enumerate(records):
        if len(rec) != 3:
            raise InvalidRecord(f"record {i} has {len(rec)} fields, expected 3")
        if not all(math.isfinite(float(x)) for x in rec):
            raise InvalidRecord(f"record {i} contains a non-finite angle: {tuple(rec)}")
        parts.append(FIELD_SEP.join(_format(x) for x in rec) + RECORD_END)
    return "".join(parts).encode("ascii")
