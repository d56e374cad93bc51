"""Synthetic rotation walks and a UDP replayer that stands in for the phone.

Walks are built as ``R_{k+1} = R_k exp(hat(dt * v + eta_k))`` from the
identity. ``v`` is a fixed angular velocity of magnitude ``base_rate`` with a
seeded direction; ``eta_k`` has components drawn uniformly from
``[-noise_amp/sqrt(3), noise_amp/sqrt(3)]`` so ``|eta_k| <= noise_amp``.

Randomness comes from numpy's PCG64 bit generator (``numpy.random.default_rng``)
using only ``standard_normal`` once for the direction and ``random`` for the
perturbations, in that order. The perturbation draws do not depend on
``noise_amp``, so walks that share a seed differ only in noise amplitude.
"""
from __future__ import annotations

import logging
import math
import socket
import time
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import InvalidInput, SendError
from .jerk import RotationTrajectory
from .so3 import DEFAULT_CONVENTION, AngleTriple, EulerConvention, exp_so3, hat
from .wire import encode_stream

log = logging.getLogger(__name__)

GIMBAL_TOL_DEG = 1e-6


@dataclass(frozen=True)
class WalkParams:
    n: int = 450
    dt: float = 0.02
    seed: int = 0
    base_rate: float = 1.0
    noise_amp: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 4:
            raise InvalidInput(f"n must be an integer >= 4, got {self.n}")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidInput(f"dt must be positive, got {self.dt}")
        if not (math.isfinite(self.base_rate) and self.base_rate >= 0):
            raise InvalidInput(f"base_rate must be >= 0, got {self.base_rate}")
        if not (math.isfinite(self.noise_amp) and self.noise_amp >= 0):
            raise InvalidInput(f"noise_amp must be >= 0, got {self.noise_amp}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidInput("seed must be a 64-bit unsigned integer")


def generate_walk(p: WalkParams) -> RotationTrajectory:
    rng = np.random.default_rng(p.seed)
    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    u = rng.random((p.n - 1, 3))
    eta = (2.0 * u - 1.0) * (p.noise_amp / math.sqrt(3.0))
    steps = exp_so3(hat(p.dt * p.base_rate * direction + eta))

    samples = np.empty((p.n, 3, 3))
    samples[0] = np.eye(3)
    for k in range(p.n - 1):
        samples[k + 1] = samples[k] @ steps[k]
    return RotationTrajectory(samples, p.dt)


def _scipy_seq(convention: EulerConvention) -> str:
    # scipy: upper case = intrinsic, lower case = extrinsic
    return convention.axes if convention.intrinsic else convention.axes.lower()


def trajectory_to_angles(traj, convention: EulerConvention = DEFAULT_CONVENTION):
    """Angle triples (degrees) reproducing each sample under ``convention``.

    The first angle is reported in ``[0, 360)``. Returns ``(angles, gimbal)``
    where ``gimbal`` lists the indices at gimbal lock; there only the
    composed rotation, not the individual angles, is determined.
    """
    samples = traj.samples if isinstance(traj, RotationTrajectory) else np.asarray(traj, dtype=float)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        eul = Rotation.from_matrix(samples).as_euler(_scipy_seq(convention), degrees=True)
    eul = np.atleast_2d(eul)
    first = np.mod(eul[:, 0], 360.0)
    eul[:, 0] = np.where(first >= 360.0, 0.0, first)

    middle = eul[:, 1]
    if convention.is_tait_bryan:
        gimbal = np.abs(np.abs(middle) - 90.0) <= GIMBAL_TOL_DEG
    else:
        gimbal = (np.abs(middle) <= GIMBAL_TOL_DEG) | (np.abs(np.abs(middle) - 180.0) <= GIMBAL_TOL_DEG)
    angles = [AngleTriple(*map(float, row)) for row in eul]
    return angles, [int(i) for i in np.flatnonzero(gimbal)]


def replay(records, dest, dt: float, chunk: int = 1) -> int:
    """Send ``records`` to ``dest = (host, port)`` as one datagram per ``chunk`` records.

    Datagrams are paced ``chunk * dt`` seconds apart (sleep based, best
    effort). Returns the number of records sent.
    """
    if chunk < 1:
        raise InvalidInput(f"chunk must be >= 1, got {chunk}")
    records = list(records)
    interval = chunk * dt
    sent = 0
    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    try:
        start = time.monotonic()
        for i, lo in enumerate(range(0, len(records), chunk)):
            wait = start + i * interval - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            block = records[lo:lo + chunk]
            try:
                sock.sendto(encode_stream(block), dest)
            except OSError as exc:
                raise SendError(f"sending to {dest[0]}:{dest[1]} failed: {exc}", sent) from exc
            sent += len(block)
    finally:
        sock.close()
    log.info("replayed %d records to %s:%s", sent, dest[0], dest[1])
    return sent
