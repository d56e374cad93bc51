"""Discrete angular velocity, path length and the normalized kinematic jerk index.

For a trajectory of ``N`` rotation samples ``R_k`` taken every ``dt`` seconds:

* ``omega_k = vee(Log(R_k^T R_{k+1})) / dt`` for ``k = 0 .. N-2``
* ``jerk_k = (omega_k - 2 omega_{k-1} + omega_{k-2}) / dt^2`` for ``k = 2 .. N-2``
* ``path = dt * sum_k |omega_k|``
* ``C = (N - 2)^2 dt^2 / path``
* ``J = C * dt * sum_k |jerk_k|``

The jerk is the plain second difference of the vectorized angular velocity,
not a covariant derivative on the rotation group.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousStepWarning, DegeneratePath, InvalidInput, TooShort
from .so3 import _log_parts, check_rotation, vee

PATH_EPS = 1e-9
MIN_SAMPLES = 4


@dataclass(frozen=True)
class RotationTrajectory:
    """Time-ordered rotation samples with a fixed sampling period ``dt`` (s)."""

    samples: np.ndarray
    dt: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 3 or samples.shape[1:] != (3, 3):
            raise InvalidInput(f"samples must have shape (N, 3, 3), got {samples.shape}")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise InvalidInput(f"dt must be positive, got {self.dt}")
        check_rotation(samples)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def n(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return (self.n - 1) * self.dt

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class AngularVelocitySeries:
    omegas: np.ndarray
    dt: float
    # step indices whose relative rotation was exactly pi (tie-broken logarithm)
    ambiguous_steps: tuple = field(default=())

    def __len__(self):
        return len(self.omegas)


@dataclass(frozen=True)
class JerkReport:
    jerk_index: float
    path_length: float
    normalization: float
    sample_count: int
    dt: float
    duration: float

    def to_dict(self) -> dict:
        return {
            "jerk_index": self.jerk_index,
            "path_length": self.path_length,
            "normalization": self.normalization,
            "sample_count": self.sample_count,
            "dt": self.dt,
            "duration": self.duration,
        }


def angular_velocity(traj: RotationTrajectory) -> AngularVelocitySeries:
    """Angular velocity of the geodesic arcs joining consecutive samples, in rad/s."""
    if traj.n < 2:
        raise TooShort(f"need at least 2 samples for an angular velocity, got {traj.n}")
    R = traj.samples
    rel = np.swapaxes(R[:-1], -1, -2) @ R[1:]
    logs, _, tie = _log_parts(rel)
    omegas = vee(logs) / traj.dt
    ambiguous = tuple(int(i) for i in np.flatnonzero(tie))
    if ambiguous:
        warnings.warn(
            f"{len(ambiguous)} step(s) rotate by exactly pi; principal logarithm is not "
            f"unique there (first at step {ambiguous[0]})", AmbiguousStepWarning, stacklevel=2)
    return AngularVelocitySeries(omegas, traj.dt, ambiguous)


def second_difference(series: AngularVelocitySeries) -> np.ndarray:
    """``(omega_k - 2 omega_{k-1} + omega_{k-2}) / dt^2`` for every ``k >= 2``, in rad/s^3."""
    w = np.asarray(series.omegas, dtype=float)
    if len(w) < 3:
        raise TooShort(f"second difference needs at least 3 velocities, got {len(w)}")
    return (w[2:] - 2.0 * w[1:-1] + w[:-2]) / series.dt ** 2


def path_length(series: AngularVelocitySeries) -> float:
    """Total rotational distance ``dt * sum |omega_k|`` in radians."""
    w = np.asarray(series.omegas, dtype=float)
    if len(w) == 0:
        raise TooShort("path length of an empty angular-velocity series")
    return float(series.dt * np.linalg.norm(w, axis=-1).sum())


def jerk_index(traj: RotationTrajectory) -> JerkReport:
    """Dimensionless kinematic jerk index of a rotation trajectory.

    Larger values mean less fluent motion. Raises TooShort for fewer than 4
    samples and DegeneratePath when the path length is at most 1e-9 rad.
    """
    n = traj.n
    if n < MIN_SAMPLES:
        raise TooShort(f"jerk index needs at least {MIN_SAMPLES} samples, got {n}")
    series = angular_velocity(traj)
    dist = path_length(series)
    if dist <= PATH_EPS:
        raise DegeneratePath(f"path length {dist:.3g} rad is too small to normalize the jerk index")
    dt = traj.dt
    jerk = second_difference(series)
    norm_const = (n - 2) ** 2 * dt ** 2 / dist
    j = norm_const * dt * float(np.linalg.norm(jerk, axis=-1).sum())
    return JerkReport(
        jerk_index=j,
        path_length=dist,
        normalization=norm_const,
        sample_count=n,
        dt=dt,
        duration=traj.duration,
    )
