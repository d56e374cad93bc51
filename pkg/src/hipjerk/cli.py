"""Command line entry point: ``hipjerk {listen,compute,simulate,replay,plotdata}``.

Exit statuses: 0 success, 2 usage, 3 acquisition, 4 file format,
5 degenerate or too-short trajectory.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings

import numpy as np

from . import acquisition as acq
from .errors import (AcquisitionError, AmbiguousStepWarning, DegeneratePath, FormatError,
                     InvalidInput, SendError, TooShort)
from .jerk import RotationTrajectory, jerk_index
from .so3 import DEFAULT_CONVENTION, EulerConvention, euler_to_rotation
from .synth import WalkParams, generate_walk, replay, trajectory_to_angles

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ACQUISITION = 3
EXIT_FORMAT = 4
EXIT_DEGENERATE = 5

log = logging.getLogger("hipjerk")


def session_trajectory(session: acq.Session, convention=DEFAULT_CONVENTION) -> RotationTrajectory:
    angles = np.array(session.records, dtype=float).reshape(-1, 3)
    return RotationTrajectory(euler_to_rotation(angles, convention), session.dt)


def build_report(session: acq.Session, convention=DEFAULT_CONVENTION) -> dict:
    """Flat report: jerk fields, provenance and diagnostics. Contains no timestamps."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", AmbiguousStepWarning)
        report = jerk_index(session_trajectory(session, convention))
    ambiguous = sum(issubclass(w.category, AmbiguousStepWarning) for w in caught)
    out = report.to_dict()
    out["source"] = session.source
    out["convention"] = str(convention)
    out["diagnostics"] = {**session.diagnostics, "ambiguous_step_warnings": ambiguous}
    return out


def format_report(report: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report, sort_keys=True, indent=2)
    diag = " ".join(f"{k}={v}" for k, v in sorted(report["diagnostics"].items()))
    return "\n".join([
        f"source:          {report['source']}",
        f"convention:      {report['convention']}",
        f"samples (N):     {report['sample_count']}",
        f"dt:              {report['dt']:g} s",
        f"duration (T):    {report['duration']:g} s",
        f"path length:     {report['path_length']:.6g} rad",
        f"normalization:   {report['normalization']:.6g} s^2/rad",
        f"jerk index:      {report['jerk_index']:.6g}",
        f"diagnostics:     {diag}",
    ])


def plot_series(session: acq.Session) -> np.ndarray:
    """Columns ``t, yaw, pitch, roll``: angles in radians, unwrapped per channel."""
    angles = np.deg2rad(np.array(session.records, dtype=float).reshape(-1, 3))
    if len(angles):
        angles = np.unwrap(angles, axis=0)
    t = np.arange(len(angles)) * session.dt
    return np.column_stack([t, angles])


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_listen(args) -> int:
    cfg = acq.ListenConfig(port=args.port, buffer_size=args.buffer_size,
                           timeout=args.timeout, dt=args.dt)
    session = acq.acquire_session(cfg)
    acq.save_session(session, args.out)
    log.info("session saved to %s (%d records)", args.out, len(session.records))
    print(format_report(build_report(session, args.convention), args.format))
    return EXIT_OK


def cmd_compute(args) -> int:
    session = acq.load_session(args.session, dt=args.dt)
    print(format_report(build_report(session, args.convention), args.format))
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = WalkParams(n=args.n, dt=args.dt, seed=args.seed,
                        base_rate=args.base_rate, noise_amp=args.noise_amp)
    angles, gimbal = trajectory_to_angles(generate_walk(params), args.convention)
    if gimbal:
        log.warning("%d sample(s) at gimbal lock under %s", len(gimbal), args.convention)
    source = (f"simulate:n={params.n},dt={params.dt!r},seed={params.seed},"
              f"base_rate={params.base_rate!r},noise_amp={params.noise_amp!r},"
              f"convention={args.convention}")
    session = acq.Session(tuple(angles), params.dt, source)
    if args.out:
        acq.save_session(session, args.out)
    else:
        sys.stdout.write(acq.dumps_session(session))
    return EXIT_OK


def cmd_replay(args) -> int:
    session = acq.load_session(args.session, dt=args.dt)
    dt = args.dt if args.dt is not None else session.dt
    sent = replay(session.records, (args.host, args.port), dt, args.chunk)
    log.info("sent %d records", sent)
    return EXIT_OK


def cmd_plotdata(args) -> int:
    session = acq.load_session(args.session, dt=args.dt)
    series = plot_series(session)
    lines = ["t_s,yaw_rad,pitch_rad,roll_rad"]
    lines.extend(",".join(repr(float(x)) for x in row) for row in series)
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def _convention(text):
    try:
        return EulerConvention.parse(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hipjerk", description="Hip-rotation fluency from smartphone yaw/pitch/roll streams.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dt_default):
        p.add_argument("--dt", type=float, default=dt_default,
                       help="sampling period in seconds")
        p.add_argument("--convention", type=_convention, default=DEFAULT_CONVENTION,
                       help="Euler order, upper case intrinsic / lower case extrinsic (default ZYX)")

    def fmt(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("listen", help="acquire a session over UDP, save it and report")
    p.add_argument("--port", type=int, default=acq.DEFAULT_PORT)
    p.add_argument("--buffer-size", type=int, default=acq.DEFAULT_BUFFER_SIZE,
                   help="stop after this many characters")
    p.add_argument("--timeout", type=float, default=acq.DEFAULT_TIMEOUT,
                   help="stop this many seconds after listening starts")
    p.add_argument("--out", default="session.csv", help="session file to write")
    common(p, acq.DEFAULT_DT)
    fmt(p)
    p.set_defaults(func=cmd_listen)

    p = sub.add_parser("compute", help="jerk report for a session file")
    p.add_argument("session")
    common(p, None)
    fmt(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("simulate", help="write a synthetic session file")
    p.add_argument("--n", type=int, default=450)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base-rate", type=float, default=1.0, help="rad/s")
    p.add_argument("--noise-amp", type=float, default=0.0, help="rad per step")
    p.add_argument("--out", default=None, help="session file (default: stdout)")
    common(p, acq.DEFAULT_DT)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("replay", help="send a session file over UDP like the phone app")
    p.add_argument("session")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=acq.DEFAULT_PORT)
    p.add_argument("--chunk", type=int, default=1, help="records per datagram")
    p.add_argument("--dt", type=float, default=None, help="pacing period (default: session dt)")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("plotdata", help="unwrapped angles in radians as CSV")
    p.add_argument("session")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except AcquisitionError as exc:
        print(f"hipjerk: acquisition failed: {exc}", file=sys.stderr)
        return EXIT_ACQUISITION
    except SendError as exc:
        print(f"hipjerk: replay failed: {exc}", file=sys.stderr)
        return EXIT_ACQUISITION
    except (FormatError, OSError) as exc:
        print(f"hipjerk: cannot read session: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (TooShort, DegeneratePath) as exc:
        print(f"hipjerk: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InvalidInput as exc:
        print(f"hipjerk: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
