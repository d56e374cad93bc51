"""
Rotation primitives
===================

The jerk pipeline works on 3x3 rotation matrices. This script walks through
the small set of operations it needs: hat/vee, the closed-form exponential
and logarithm, and converting yaw/pitch/roll triples into matrices.
"""
import numpy as np

from hipjerk import EulerConvention, euler_to_rotation, exp_so3, hat, log_so3, vee

np.set_printoptions(precision=4, suppress=True)

# Skew matrices keep the three independent entries in the upper triangle.
omega = hat([0.3, -0.2, 0.5])
print("hat([0.3, -0.2, 0.5]) =\n", omega)
print("vee(hat(v)) =", vee(omega))

# exp maps a skew matrix to a rotation; log brings it back.
R = exp_so3(omega)
print("\nexp(omega) =\n", R)
print("R^T R = I ?", np.allclose(R.T @ R, np.eye(3)), " det =", np.linalg.det(R))
print("log(exp(omega)) - omega, max abs:", np.abs(log_so3(R) - omega).max())

# A half turn has no unique logarithm; the axis sign is fixed by a tie-break.
half_turn = np.diag([1.0, -1.0, -1.0])
print("\nlog of a half turn about x:\n", log_so3(half_turn))

# Phone orientation arrives as yaw/pitch/roll in degrees. The default is
# intrinsic Z-Y'-X''; any of the twelve orders can be selected.
print("\nyaw=90 (default ZYX):\n", euler_to_rotation((90, 0, 0)))
print("same triple read as extrinsic xyz:\n", euler_to_rotation((90, 0, 0), EulerConvention("XYZ", False)))

# Everything broadcasts over leading dimensions.
batch = euler_to_rotation(np.random.default_rng(0).uniform(-90, 90, size=(1000, 3)))
print("\nbatch of", batch.shape[0], "rotations, largest |angle| =",
      np.linalg.norm(vee(log_so3(batch)), axis=1).max())
