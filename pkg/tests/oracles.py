"""Independent reference computations used only by the tests.

Nothing here imports the closed-form exponential/logarithm under test: the
brute-force jerk pipeline uses scipy's dense ``logm`` and plain loops, and the
geodesic angles come from unit quaternions.
"""
import math

import numpy as np
import scipy.linalg
from scipy.spatial.transform import Rotation

# brute_force_jerk on theta_k = 10 (k dt)^3 about Z, N = 8, dt = 0.02
CUBIC_N8_ORACLE = 3.148688046647137
# a pure cubic has a constant third difference, giving 6 (N-2)^2 (N-3) / (N-1)^3
CUBIC_N8_CLOSED_FORM = 1080 / 343


def brute_force_jerk(samples, dt):
    """Literal step-by-step evaluation of the jerk index with loops and a dense logm.

    Returns ``(J, d, C)``.
    """
    n = len(samples)
    omegas = []
    for k in range(n - 1):
        log_rel = np.real(scipy.linalg.logm(samples[k].T @ samples[k + 1])) / dt
        omegas.append([log_rel[0, 1], log_rel[0, 2], log_rel[1, 2]])
    d = 0.0
    for w in omegas:
        d += math.sqrt(w[0] ** 2 + w[1] ** 2 + w[2] ** 2)
    d *= dt
    total = 0.0
    for k in range(2, n - 1):
        acc = [(omegas[k][i] - 2 * omegas[k - 1][i] + omegas[k - 2][i]) / dt ** 2 for i in range(3)]
        total += math.sqrt(acc[0] ** 2 + acc[1] ** 2 + acc[2] ** 2)
    c = (n - 2) ** 2 * dt ** 2 / d
    return c * dt * total, d, c


def quaternion_step_angles(samples):
    """Geodesic angle between consecutive samples: ``2 acos(|<q_k, q_{k+1}>|)``."""
    q = Rotation.from_matrix(samples).as_quat()
    dots = np.abs(np.sum(q[:-1] * q[1:], axis=-1))
    return 2.0 * np.arccos(np.clip(dots, -1.0, 1.0))


def quaternion_angle(R):
    q = Rotation.from_matrix(R).as_quat()
    return 2.0 * np.arctan2(np.linalg.norm(q[..., :3], axis=-1), np.abs(q[..., 3]))


def quaternion_exp(v):
    """Rotation matrix for the upper-triangular hat of ``v``, built from a unit quaternion.

    The upper-triangular layout ``(a, b, c)`` corresponds to the rotation
    vector ``(-c, b, -a)`` of the usual cross-product convention.
    """
    a, b, c = v
    w = np.array([-c, b, -a])
    theta = np.linalg.norm(w)
    if theta == 0:
        return np.eye(3)
    x, y, z = math.sin(theta / 2) * w / theta
    s = math.cos(theta / 2)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - s * z), 2 * (x * z + s * y)],
        [2 * (x * y + s * z), 1 - 2 * (x * x + z * z), 2 * (y * z - s * x)],
        [2 * (x * z - s * y), 2 * (y * z + s * x), 1 - 2 * (x * x + y * y)],
    ])


def random_trajectory(rng, n, dt=0.02, max_step=2.5, min_step=0.05):
    """Random walk on rotations with step angles in ``[min_step, max_step]`` radians."""
    samples = [Rotation.random(random_state=rng).as_matrix()]
    for _ in range(n - 1):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(min_step, max_step)
        samples.append(samples[-1] @ Rotation.from_rotvec(angle * axis).as_matrix())
    return np.array(samples)


def single_axis_trajectory(angles, axis="Z"):
    """Rotations about one coordinate axis, built from sin/cos directly."""
    angles = np.asarray(angles, dtype=float)
    c, s = np.cos(angles), np.sin(angles)
    out = np.zeros((len(angles), 3, 3))
    i, j = {"X": (1, 2), "Y": (2, 0), "Z": (0, 1)}[axis]
    k = 3 - i - j
    out[:, k, k] = 1.0
    out[:, i, i] = c
    out[:, j, j] = c
    out[:, i, j] = -s
    out[:, j, i] = s
    return out
