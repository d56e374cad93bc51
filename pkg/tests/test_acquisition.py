import socket
import threading
import time

import pytest

from hipjerk.acquisition import (CSV_HEADER, ListenConfig, Listener, Session, acquire_session,
                                 listen, load_session, save_session, session_from_raw)
from hipjerk.errors import BindError, EmptyAcquisition, FormatError, InvalidInput


def cfg(port, **kw):
    kw.setdefault("timeout", 0.4)
    return ListenConfig(port=port, **kw)


class TestListenConfig:
    def test_defaults(self):
        c = ListenConfig()
        assert (c.port, c.buffer_size, c.timeout, c.dt, c.host) == (5555, 65536, 120.0, 0.02, "0.0.0.0")

    @pytest.mark.parametrize("kw", [dict(port=0), dict(port=70000), dict(buffer_size=0),
                                    dict(timeout=0), dict(dt=0.01)])
    def test_invalid(self, kw):
        with pytest.raises(InvalidInput):
            ListenConfig(**kw)


class TestListen:
    def test_concatenates_until_timeout(self, free_port, send):
        with Listener(cfg(free_port)) as lst:
            send(free_port, "1,2,3#", "4,5,6#")
            start = time.monotonic()
            raw = lst.receive()
            elapsed = time.monotonic() - start
        assert raw == b"1,2,3#4,5,6#"
        assert lst.stop_reason == "timeout"
        assert lst.datagrams == 2
        assert 0.4 <= elapsed < 0.4 + 0.2

    def test_buffer_full_keeps_whole_datagram(self, free_port, send):
        with Listener(cfg(free_port, buffer_size=7, timeout=5.0)) as lst:
            send(free_port, "1,2,3#4,5,6#", "7,8,9#")
            start = time.monotonic()
            raw = lst.receive()
            elapsed = time.monotonic() - start
        assert raw == b"1,2,3#4,5,6#"
        assert lst.stop_reason == "buffer"
        assert elapsed < 1.0

    def test_byte_count_identifies_stop_reason(self, free_port, send):
        with Listener(cfg(free_port, buffer_size=12, timeout=5.0)) as lst:
            send(free_port, "1,2,3#", "4,5,6#", "7,8,9#")
            raw = lst.receive()
        assert len(raw) >= 12 and lst.stop_reason == "buffer"
        assert raw == b"1,2,3#4,5,6#"

    def test_any_source_address(self, free_port, send):
        try:
            probe = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
            probe.bind(("127.0.0.2", 0))
            probe.close()
            second = "127.0.0.2"
        except OSError:
            second = "127.0.0.1"
        with Listener(cfg(free_port, timeout=0.3)) as lst:
            a = send(free_port, "1,1,1#", src="127.0.0.1")
            b = send(free_port, "2,2,2#", src=second)
            a.sendto(b"3,3,3#", ("127.0.0.1", free_port))
            b.sendto(b"4,4,4#", ("127.0.0.1", free_port))
            raw = lst.receive()
        assert raw == b"1,1,1#2,2,2#3,3,3#4,4,4#"
        assert len(lst.sources) == 2

    def test_binds_wildcard(self, free_port):
        with Listener(cfg(free_port)) as lst:
            assert lst.address == ("0.0.0.0", free_port)

    def test_empty_acquisition(self, free_port):
        start = time.monotonic()
        with pytest.raises(EmptyAcquisition):
            listen(cfg(free_port, timeout=0.2))
        assert time.monotonic() - start < 0.2 + 0.2

    def test_port_in_use(self, free_port):
        with Listener(cfg(free_port)):
            with pytest.raises(BindError):
                Listener(cfg(free_port))


class TestAcquireSession:
    def test_well_formed(self, free_port, send):
        with Listener(cfg(free_port, buffer_size=1)) as lst:
            send(free_port, "10.5,-3,0.25#350,1,2#")
            session = session_from_raw(lst.receive(), 0.02, "test")
        assert session.records == ((10.5, -3.0, 0.25), (350.0, 1.0, 2.0))
        assert session.dt == 0.02
        assert session.diagnostics["trailing_partial"] is False

    def test_trailing_partial_and_empty(self, free_port, send):
        t = threading.Timer(0.1, lambda: send(free_port, "1,2,3##4,5"))
        t.start()
        session = acquire_session(cfg(free_port, timeout=0.4, dt=0.05))
        t.join()
        assert session.records == ((1.0, 2.0, 3.0),)
        assert session.diagnostics["trailing_partial"] is True
        assert session.diagnostics["empty_expunged"] == 1
        assert session.dt == 0.05
        assert session.source == f"udp:0.0.0.0:{free_port}"

    def test_empty(self, free_port):
        with pytest.raises(EmptyAcquisition):
            acquire_session(cfg(free_port, timeout=0.2))


class TestSessionFiles:
    def make(self):
        return Session(((0.0, 1.5, -2.25), (359.999, -179.5, 90.0), (1e-17, 3.0, -0.0)), 0.04,
                       "unit test, with \"quotes\"\nand newline",
                       {"empty_expunged": 2, "malformed_skipped": 1, "trailing_partial": True,
                        "out_of_range": 0})

    def test_round_trip(self, tmp_path):
        s = self.make()
        save_session(s, tmp_path / "s.csv")
        assert load_session(tmp_path / "s.csv") == s

    def test_file_layout(self, tmp_path):
        save_session(self.make(), tmp_path / "s.csv")
        lines = (tmp_path / "s.csv").read_text().splitlines()
        assert lines[0] == "# hipjerk-session v1"
        assert "# dt=0.04" in lines
        assert lines[lines.index(CSV_HEADER) + 1] == "0,1.5,-2.25"

    def test_header_only(self, tmp_path):
        p = tmp_path / "h.csv"
        p.write_text(CSV_HEADER + "\n")
        s = load_session(p, dt=0.02)
        assert s.records == () and s.dt == 0.02

    def test_plain_csv_needs_dt(self, tmp_path):
        p = tmp_path / "h.csv"
        p.write_text(CSV_HEADER + "\n1,2,3\n")
        with pytest.raises(FormatError):
            load_session(p)

    def test_metadata_dt_wins(self, tmp_path):
        save_session(self.make(), tmp_path / "s.csv")
        assert load_session(tmp_path / "s.csv", dt=1.0).dt == 0.04

    def test_two_field_row(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("# dt=0.02\n" + CSV_HEADER + "\n1,2,3\n4,5\n")
        with pytest.raises(FormatError, match="line 4") as info:
            load_session(p)
        assert info.value.line == 4

    def test_bad_number(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("# dt=0.02\n" + CSV_HEADER + "\n1,two,3\n")
        with pytest.raises(FormatError, match="line 3"):
            load_session(p)

    def test_bad_header(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("# dt=0.02\nyaw,pitch,roll\n1,2,3\n")
        with pytest.raises(FormatError, match="line 2"):
            load_session(p)

    def test_bad_metadata(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("# dt=zero\n" + CSV_HEADER + "\n")
        with pytest.raises(FormatError, match="line 1"):
            load_session(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_session(tmp_path / "nope.csv")

    def test_session_rejects_non_finite(self):
        with pytest.raises(InvalidInput):
            Session(((float("nan"), 0, 0),), 0.02)
