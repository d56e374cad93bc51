"""UDP acquisition of the angle stream and session files.

The listener binds the wildcard address, so any phone on the network can
send to it, and stops at whichever comes first: the accumulated payload
reaching ``buffer_size`` characters, or ``timeout`` seconds since listening
began. Datagrams are appended whole, so the final one may overshoot the
buffer size.

Session file layout::

    # hipjerk-session v1
    # dt=0.02
    # source="udp:0.0.0.0:5555"
    # empty_expunged=0
    # malformed_skipped=0
    # trailing_partial=false
    # out_of_range=0
    yaw_deg,pitch_deg,roll_deg
    12.5,-3,0.25
    ...

Metadata lines start with ``# `` and hold ``key=value`` pairs whose values are
JSON literals. Everything after the header line is plain CSV.
"""
from __future__ import annotations

import json
import logging
import math
import socket
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BindError, EmptyAcquisition, FormatError, InvalidInput
from .so3 import AngleTriple
from .wire import _FLOAT, _format, parse_stream

log = logging.getLogger(__name__)

DEFAULT_PORT = 5555
DEFAULT_BUFFER_SIZE = 65536
DEFAULT_TIMEOUT = 120.0
DEFAULT_DT = 0.020
MIN_DT = 0.020
WILDCARD = "0.0.0.0"

CSV_HEADER = "yaw_deg,pitch_deg,roll_deg"
MAGIC = "# hipjerk-session v1"
_RECV_SIZE = 65535


@dataclass(frozen=True)
class ListenConfig:
    port: int = DEFAULT_PORT
    buffer_size: int = DEFAULT_BUFFER_SIZE
    timeout: float = DEFAULT_TIMEOUT
    dt: float = DEFAULT_DT
    host: str = WILDCARD

    def __post_init__(self):
        if not 1 <= int(self.port) <= 65535:
            raise InvalidInput(f"port must be in [1, 65535], got {self.port}")
        if self.buffer_size <= 0:
            raise InvalidInput(f"buffer_size must be positive, got {self.buffer_size}")
        if not self.timeout > 0:
            raise InvalidInput(f"timeout must be positive, got {self.timeout}")
        # small tolerance so that 0.02 typed on a command line is accepted
        if not self.dt >= MIN_DT - 1e-12:
            raise InvalidInput(f"dt must be at least {MIN_DT} s (device minimum), got {self.dt}")


@dataclass(frozen=True)
class Session:
    records: tuple
    dt: float
    source: str = ""
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        records = tuple(AngleTriple(*map(float, r)) for r in self.records)
        for i, r in enumerate(records):
            if not all(math.isfinite(x) for x in r):
                raise InvalidInput(f"record {i} contains non-finite angles")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidInput(f"dt must be positive, got {self.dt}")
        object.__setattr__(self, "records", records)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "diagnostics", dict(self.diagnostics))


class Listener:
    """Bound UDP socket that collects one acquisition.

    Binding happens on construction so the caller can start senders once the
    port is known to be open. Use as a context manager::

        with Listener(cfg) as lst:
            raw = lst.receive()
        lst.stop_reason  # "buffer" or "timeout"
    """

    def __init__(self, cfg: ListenConfig):
        self.cfg = cfg
        self.stop_reason = None
        self.datagrams = 0
        self.sources = set()
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        try:
            self._sock.bind((cfg.host, cfg.port))
        except OSError as exc:
            self._sock.close()
            raise BindError(f"cannot bind UDP {cfg.host}:{cfg.port}: {exc.strerror or exc}") from exc

    @property
    def address(self):
        return self._sock.getsockname()

    def receive(self) -> bytes:
        cfg = self.cfg
        chunks = []
        total = 0
        deadline = time.monotonic() + cfg.timeout
        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                self.stop_reason = "timeout"
                break
            self._sock.settimeout(remaining)
            try:
                data, addr = self._sock.recvfrom(_RECV_SIZE)
            except socket.timeout:
                self.stop_reason = "timeout"
                break
            chunks.append(data)
            total += len(data)
            self.datagrams += 1
            self.sources.add(addr)
            if total >= cfg.buffer_size:
                self.stop_reason = "buffer"
                break
        log.info("listen on port %d stopped by %s: %d datagrams, %d bytes from %d source(s)",
                 cfg.port, self.stop_reason, self.datagrams, total, len(self.sources))
        if self.datagrams == 0:
            raise EmptyAcquisition(f"no datagrams received on port {cfg.port} within {cfg.timeout} s")
        return b"".join(chunks)

    def close(self):
        self._sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def listen(cfg: ListenConfig) -> bytes:
    """Receive one raw stream under the buffer-size / timeout contract."""
    with Listener(cfg) as lst:
        return lst.receive()


def session_from_raw(raw: bytes, dt: float, source: str = "") -> Session:
    report = parse_stream(raw)
    if report.trailing_partial:
        log.warning("stream ended mid-record; trailing fragment dropped")
    return Session(tuple(report.records), dt, source, report.diagnostics())


def acquire_session(cfg: ListenConfig) -> Session:
    raw = listen(cfg)
    return session_from_raw(raw, cfg.dt, f"udp:{cfg.host}:{cfg.port}")


def dumps_session(session: Session) -> str:
    lines = [MAGIC, f"# dt={json.dumps(session.dt)}", f"# source={json.dumps(session.source)}"]
    for key, value in session.diagnostics.items():
        lines.append(f"# {key}={json.dumps(value)}")
    lines.append(CSV_HEADER)
    lines.extend(",".join(_format(x) for x in rec) for rec in session.records)
    return "\n".join(lines) + "\n"


def save_session(session: Session, path) -> None:
    Path(path).write_text(dumps_session(session), encoding="ascii")


def load_session(path, dt: float | None = None) -> Session:
    """Read a session file.

    ``dt`` from the file's metadata wins; the argument is the fallback for
    plain CSV files that carry no metadata. Raises FormatError naming the
    offending line.
    """
    text = Path(path).read_text(encoding="ascii", errors="replace")
    meta = {}
    records = []
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not header_seen:
            if stripped == MAGIC or not stripped:
                continue
            if stripped.startswith("#"):
                key, sep, value = stripped[1:].strip().partition("=")
                if not sep:
                    raise FormatError(f"metadata line without '=': {line!r}", lineno)
                try:
                    meta[key.strip()] = json.loads(value)
                except json.JSONDecodeError as exc:
                    raise FormatError(f"bad metadata value for {key.strip()!r}: {exc.msg}", lineno) from None
                continue
            if stripped.replace(" ", "") != CSV_HEADER:
                raise FormatError(f"expected header {CSV_HEADER!r}, got {line!r}", lineno)
            header_seen = True
            continue
        if not stripped:
            continue
        fields = [f.strip() for f in stripped.split(",")]
        if len(fields) != 3:
            raise FormatError(f"expected 3 fields, got {len(fields)}: {line!r}", lineno)
        if not all(_FLOAT.fullmatch(f) for f in fields):
            raise FormatError(f"unparseable angle in {line!r}", lineno)
        rec = AngleTriple(*map(float, fields))
        if not all(math.isfinite(x) for x in rec):
            raise FormatError(f"non-finite angle in {line!r}", lineno)
        records.append(rec)
    if not header_seen:
        raise FormatError(f"missing header line {CSV_HEADER!r}")

    file_dt = meta.pop("dt", None)
    dt = file_dt if file_dt is not None else dt
    if dt is None:
        raise FormatError("no dt in the file metadata and none supplied")
    if not isinstance(dt, (int, float)) or not dt > 0:
        raise FormatError(f"dt must be a positive number, got {dt!r}")
    source = meta.pop("source", str(path))
    return Session(tuple(records), float(dt), str(source), meta)
