"""Rotation-group primitives: hat/vee, closed-form exponential and logarithm, Euler angles.

Skew matrices use the upper-triangular layout

    hat((a, b, c)) = [[ 0,  a,  b],
                      [-a,  0,  c],
                      [-b, -c,  0]]

which is *not* the cross-product hat: ``hat(v) @ w != cross(v, w)``. The two
layouts differ only by signs and ordering of the components, so norms of the
vectorized angular velocity (and everything built from them) agree.

All functions broadcast over leading dimensions: vectors are ``(..., 3)`` and
matrices ``(..., 3, 3)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInput, NotRotation, NotSkew

SKEW_TOL = 1e-9
ORTHO_TOL = 1e-9
TRACE_TOL = 1e-6
SMALL_ANGLE = 1e-4
# below this |sin(theta)| with cos(theta) < 0 the step is treated as exactly pi
PI_SIN_TOL = 1e-12
NEAR_PI = 1e-4


class AngleTriple(NamedTuple):
    """One yaw/pitch/roll sample in degrees, as sent by the phone."""

    yaw: float
    pitch: float
    roll: float

    def in_nominal_range(self) -> bool:
        """True when every angle lies in the device's documented range.

        Sensors drift past these bounds, so callers count violations rather
        than reject them.
        """
        return (0.0 <= self.yaw < 360.0
                and -180.0 <= self.pitch < 180.0
                and -90.0 <= self.roll <= 90.0)


_TAIT_BRYAN = ("XYZ", "XZY", "YXZ", "YZX", "ZXY", "ZYX")
_PROPER = ("XYX", "XZX", "YXY", "YZY", "ZXZ", "ZYZ")
EULER_ORDERS = _TAIT_BRYAN + _PROPER


@dataclass(frozen=True)
class EulerConvention:
    """Axis order plus intrinsic/extrinsic flag.

    The three angles of an :class:`AngleTriple` are applied to the three axes
    in order: with intrinsic ``"ZYX"`` the matrix is ``Rz(yaw) Ry(pitch) Rx(roll)``,
    with extrinsic ``"ZYX"`` it is ``Rx(roll) Ry(pitch) Rz(yaw)``.
    """

    axes: str = "ZYX"
    intrinsic: bool = True

    def __post_init__(self):
        if self.axes not in EULER_ORDERS:
            raise InvalidInput(
                f"unsupported Euler order {self.axes!r}; expected one of {', '.join(EULER_ORDERS)}")

    @property
    def is_tait_bryan(self) -> bool:
        return self.axes in _TAIT_BRYAN

    @classmethod
    def parse(cls, text: str) -> "EulerConvention":
        """Parse ``"ZYX"`` (intrinsic, upper case) or ``"zyx"`` (extrinsic, lower case)."""
        text = text.strip()
        if text.isupper():
            return cls(text, True)
        if text.islower():
            return cls(text.upper(), False)
        raise InvalidInput(f"Euler convention {text!r} must be all upper case "
                           "(intrinsic) or all lower case (extrinsic)")

    def __str__(self) -> str:
        return self.axes if self.intrinsic else self.axes.lower()


DEFAULT_CONVENTION = EulerConvention()


def hat(v) -> np.ndarray:
    """Map 3-vectors to skew matrices in the upper-triangular layout."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1:] != (3,):
        raise InvalidInput(f"expected trailing dimension 3, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInput("hat() input contains non-finite values")
    a, b, c = v[..., 0], v[..., 1], v[..., 2]
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1] = a
    out[..., 0, 2] = b
    out[..., 1, 2] = c
    out[..., 1, 0] = -a
    out[..., 2, 0] = -b
    out[..., 2, 1] = -c
    return out


def _as_matrices(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.shape[-2:] != (3, 3):
        raise InvalidInput(f"{name} must have trailing shape (3, 3), got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInput(f"{name} contains non-finite values")
    return M


def _check_skew(omega: np.ndarray, tol: float) -> None:
    err = np.abs(omega + np.swapaxes(omega, -1, -2))
    if err.size and err.max() > tol:
        raise NotSkew(f"matrix is not skew-symmetric (max |M + M^T| = {err.max():.3g})")


def vee(omega, tol: float = SKEW_TOL) -> np.ndarray:
    """Inverse of :func:`hat`: return ``(M[0,1], M[0,2], M[1,2])``."""
    omega = _as_matrices(omega, "vee() input")
    _check_skew(omega, tol)
    return np.stack([omega[..., 0, 1], omega[..., 0, 2], omega[..., 1, 2]], axis=-1)


def exp_so3(omega) -> np.ndarray:
    """Rodrigues exponential of a skew matrix.

    ``exp(W) = I + sin(t)/t W + (1 - cos t)/t^2 W^2`` with ``t = |vee(W)|``; the
    two coefficients switch to their Taylor expansions below ``t = 1e-4``.
    """
    omega = _as_matrices(omega, "exp_so3() input")
    _check_skew(omega, SKEW_TOL)
    theta2 = omega[..., 0, 1] ** 2 + omega[..., 0, 2] ** 2 + omega[..., 1, 2] ** 2
    theta = np.sqrt(theta2)
    small = theta < SMALL_ANGLE
    safe = np.where(small, 1.0, theta)
    a = np.where(small, 1.0 - theta2 / 6.0, np.sin(safe) / safe)
    half = np.sin(safe / 2.0) / safe
    b = np.where(small, 0.5 - theta2 / 24.0, 2.0 * half * half)
    eye = np.broadcast_to(np.eye(3), omega.shape)
    return eye + a[..., None, None] * omega + b[..., None, None] * (omega @ omega)


def _axis_from_symmetric(R: np.ndarray, cos_theta: np.ndarray, sin_vec: np.ndarray) -> np.ndarray:
    """Unit rotation axes for angles near pi, from ``(R + R^T)/2 = c I + (1 - c) a a^T``.

    ``sin_vec`` is the cross-product vee of the skew part (``sin(t) * axis``);
    it fixes the sign whenever it is distinguishable from rounding noise. At
    exactly pi the sign is chosen so the largest-magnitude component is >= 0.
    """
    sym = 0.5 * (R + np.swapaxes(R, -1, -2))
    outer = (sym - cos_theta[..., None, None] * np.eye(3)) / (1.0 - cos_theta)[..., None, None]
    diag = np.diagonal(outer, axis1=-2, axis2=-1)
    col = np.argmax(diag, axis=-1)
    idx = np.arange(len(col))
    axis = outer[idx, :, col] / np.sqrt(np.maximum(diag[idx, col], 1e-300))[:, None]
    axis /= np.linalg.norm(axis, axis=-1, keepdims=True)

    s_norm = np.linalg.norm(sin_vec, axis=-1)
    dot = np.einsum("...i,...i->...", axis, sin_vec)
    lead = axis[idx, np.argmax(np.abs(axis), axis=-1)]
    sign = np.where(s_norm > PI_SIN_TOL, np.sign(dot), np.sign(lead))
    sign = np.where(sign == 0, 1.0, sign)
    return axis * sign[:, None]


def _cross_hat(w: np.ndarray) -> np.ndarray:
    out = np.zeros(w.shape[:-1] + (3, 3))
    out[..., 0, 1] = -w[..., 2]
    out[..., 0, 2] = w[..., 1]
    out[..., 1, 2] = -w[..., 0]
    out[..., 1, 0] = w[..., 2]
    out[..., 2, 0] = -w[..., 1]
    out[..., 2, 1] = w[..., 0]
    return out


def _log_parts(R):
    R = _as_matrices(R, "log_so3() input")
    tr = np.trace(R, axis1=-2, axis2=-1)
    if np.any(tr < -1.0 - TRACE_TOL) or np.any(tr > 3.0 + TRACE_TOL):
        bad = tr[(tr < -1.0 - TRACE_TOL) | (tr > 3.0 + TRACE_TOL)].ravel()[0]
        raise NotRotation(f"trace {bad:.9g} is outside [-1, 3]; not a rotation matrix")

    shape = R.shape[:-2]
    R = R.reshape(-1, 3, 3)
    skew_part = 0.5 * (R - np.swapaxes(R, -1, -2))
    sin_vec = np.stack([skew_part[:, 2, 1], skew_part[:, 0, 2], skew_part[:, 1, 0]], axis=-1)
    s = np.linalg.norm(sin_vec, axis=-1)
    c = np.clip(0.5 * (np.trace(R, axis1=-2, axis2=-1) - 1.0), -1.0, 1.0)
    theta = np.arctan2(s, c)

    small = theta < SMALL_ANGLE
    safe_s = np.where(s > 0.0, s, 1.0)
    ratio = np.where(small, 1.0 + theta * theta / 6.0, theta / safe_s)
    out = ratio[:, None, None] * skew_part

    near_pi = (np.pi - theta) < NEAR_PI
    if np.any(near_pi):
        axis = _axis_from_symmetric(R[near_pi], c[near_pi], sin_vec[near_pi])
        out[near_pi] = _cross_hat(theta[near_pi, None] * axis)
    tie = near_pi & (s <= PI_SIN_TOL)
    return out.reshape(shape + (3, 3)), theta.reshape(shape), tie.reshape(shape)


def log_so3(R) -> np.ndarray:
    """Principal logarithm of a rotation matrix, returned as an exactly skew matrix.

    The angle comes from ``atan2(|skew part|, (tr R - 1)/2)`` which stays
    accurate at both ends of ``[0, pi]``. Within 1e-4 of pi the axis is read
    off the symmetric part instead of the vanishing skew part.

    Raises NotRotation when ``tr R`` is outside ``[-1, 3]`` beyond 1e-6.
    """
    return _log_parts(R)[0]


def rotation_angle(R) -> np.ndarray:
    """Geodesic angle of ``R`` from the identity, in ``[0, pi]``."""
    return _log_parts(R)[1]


def check_rotation(R, tol: float = ORTHO_TOL) -> np.ndarray:
    """Validate ``R^T R = I`` and ``det R = 1`` elementwise within ``tol``."""
    R = _as_matrices(R, "rotation")
    gram = np.swapaxes(R, -1, -2) @ R
    ortho = np.abs(gram - np.eye(3))
    if ortho.size and ortho.max() > tol:
        raise NotRotation(f"matrix is not orthonormal (max |R^T R - I| = {ortho.max():.3g})")
    det = np.linalg.det(R)
    if det.size and np.abs(det - 1.0).max() > tol:
        raise NotRotation("determinant differs from +1")
    return R


def axis_rotation(axis: str, angle) -> np.ndarray:
    """Rotation by ``angle`` radians about coordinate axis ``"X"``, ``"Y"`` or ``"Z"``."""
    angle = np.asarray(angle, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    one, zero = np.ones_like(angle), np.zeros_like(angle)
    if axis == "X":
        rows = [[one, zero, zero], [zero, c, -s], [zero, s, c]]
    elif axis == "Y":
        rows = [[c, zero, s], [zero, one, zero], [-s, zero, c]]
    elif axis == "Z":
        rows = [[c, -s, zero], [s, c, zero], [zero, zero, one]]
    else:
        raise InvalidInput(f"unknown axis {axis!r}")
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def euler_to_rotation(angles, convention: EulerConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Rotation matrices from angle triples in degrees.

    ``angles`` is an :class:`AngleTriple` or any ``(..., 3)`` array of
    (yaw, pitch, roll) degrees.
    """
    deg = np.asarray(angles, dtype=float)
    if deg.shape[-1:] != (3,):
        raise InvalidInput(f"expected trailing dimension 3, got shape {deg.shape}")
    if not np.all(np.isfinite(deg)):
        raise InvalidInput("angle triple contains non-finite values")
    rad = np.deg2rad(deg)
    r1, r2, r3 = (axis_rotation(ax, rad[..., i]) for i, ax in enumerate(convention.axes))
    if convention.intrinsic:
        return r1 @ r2 @ r3
    return r3 @ r2 @ r1
