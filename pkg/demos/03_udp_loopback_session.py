"""
Acquiring a session over UDP
============================

Impersonates the phone with the replayer and captures the stream with the
listener on the local machine, then compares the jerk report with the one
computed offline. On a real setup the phone app sends to the computer's port
and only the listening half is needed (``hipjerk listen --port 5555``).
"""
import socket
import threading

from hipjerk import (ListenConfig, Listener, Session, WalkParams, generate_walk, jerk_index, replay,
                     trajectory_to_angles)
from hipjerk.acquisition import session_from_raw
from hipjerk.cli import session_trajectory

with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as probe:
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]

walk = generate_walk(WalkParams(n=200, dt=0.02, seed=3, noise_amp=0.02))
records, gimbal = trajectory_to_angles(walk)
print(f"{len(records)} records, {len(gimbal)} at gimbal lock")

cfg = ListenConfig(port=port, timeout=5.0, buffer_size=10 ** 6, dt=0.02)
with Listener(cfg) as listener:
    # 10 records per datagram, paced like a phone sampling every 20 ms
    sender = threading.Thread(target=replay, args=(records, ("127.0.0.1", port), 0.02, 10))
    sender.start()
    raw = listener.receive()
    sender.join()

print(f"stopped by {listener.stop_reason} after {listener.datagrams} datagrams, {len(raw)} bytes")
session = session_from_raw(raw, cfg.dt, f"udp:{port}")
print("diagnostics:", session.diagnostics)
print("records identical:", list(session.records) == records)

live = jerk_index(session_trajectory(session))
print("jerk index (live)   :", live.jerk_index)
offline = jerk_index(session_trajectory(Session(tuple(records), 0.02))).jerk_index
print("jerk index (offline):", offline)
print("jerk index (matrices, before angle conversion):", jerk_index(walk).jerk_index)
