import socket
import sys

import pytest


def _free_udp_port():
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture
def free_port():
    return _free_udp_port()


@pytest.fixture
def send():
    """Send UDP payloads to a local port from a fresh socket (optionally bound to ``src``)."""
    socks = []

    def _send(port, *payloads, src=None):
        s = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        socks.append(s)
        if src is not None:
            s.bind((src, 0))
        for p in payloads:
            s.sendto(p if isinstance(p, bytes) else p.encode(), ("127.0.0.1", port))
        return s

    yield _send
    for s in socks:
        s.close()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
