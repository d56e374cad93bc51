"""
Jerk index on synthetic walks
=============================

Generates seeded random walks on the rotation group with growing amounts of
step-to-step perturbation and shows how the normalized jerk index separates
them, while the path length barely moves.
"""
import numpy as np

from hipjerk import WalkParams, angular_velocity, generate_walk, jerk_index

print(f"{'noise (rad)':>12} {'path (rad)':>12} {'jerk index':>14}")
for noise in (0.0, 0.005, 0.01, 0.02, 0.05, 0.1):
    traj = generate_walk(WalkParams(n=450, dt=0.02, seed=1, base_rate=1.0, noise_amp=noise))
    report = jerk_index(traj)
    print(f"{noise:>12g} {report.path_length:>12.3f} {report.jerk_index:>14.6g}")

# The report carries the ingredients of the normalization.
report = jerk_index(generate_walk(WalkParams(n=450, seed=1, noise_amp=0.05)))
print("\n", report)

# The index is unchanged when a smooth profile is stretched in amplitude:
# jerk and path length scale together.
from hipjerk import RotationTrajectory
from hipjerk.so3 import axis_rotation

t = np.arange(400) * 0.02
s = t / t[-1]
for amplitude in (0.5, 1.0, 2.0, 10.0):
    theta = amplitude * (0.5 * s + 1.5 * s ** 2 - s ** 3)
    j = jerk_index(RotationTrajectory(axis_rotation("Z", theta), 0.02)).jerk_index
    print(f"cubic profile, amplitude {amplitude:>4}: J = {j:.4f}")

# Angular velocity of the noisy walk, e.g. for inspection or plotting.
w = angular_velocity(generate_walk(WalkParams(n=450, seed=1, noise_amp=0.05)))
print("\nmean |omega| =", np.linalg.norm(w.omegas, axis=1).mean(), "rad/s")
