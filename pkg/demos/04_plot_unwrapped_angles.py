"""
Plotting a session
==================

Writes a synthetic session file, then plots yaw/pitch/roll in radians with
2*pi jumps removed, the same series ``hipjerk plotdata`` emits. The figure is
saved next to the session file.
"""
import sys
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from hipjerk import Session, WalkParams, generate_walk, load_session, save_session, trajectory_to_angles
from hipjerk.cli import plot_series

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
path = out_dir / "walk.csv"

angles, _ = trajectory_to_angles(generate_walk(WalkParams(n=450, seed=7, base_rate=2.0, noise_amp=0.03)))
save_session(Session(tuple(angles), 0.02, "demo walk"), path)

series = plot_series(load_session(path))
fig, ax = plt.subplots(figsize=(8, 4))
for col, name in zip(series[:, 1:].T, ("yaw", "pitch", "roll")):
    ax.plot(series[:, 0], col, label=name)
ax.set_xlabel("time (s)")
ax.set_ylabel("angle (rad, unwrapped)")
ax.legend()
fig.tight_layout()
fig.savefig(out_dir / "walk_angles.png", dpi=120)
print("wrote", path, "and", out_dir / "walk_angles.png")
