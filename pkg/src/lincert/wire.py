"""Running a prover and a verifier in separate processes over a byte stream.

Frame: u32 little-endian length, then protocol id (u8), tag (u8), payload.
The verifier opens with a HELLO frame (tag 0) carrying the 32-byte input
digest; the prover echoes it, or answers ABORT when its input differs.
"""

from __future__ import annotations

import socket
import socketserver
import struct
import threading

from .codec import TAG_ABORT, Message, decode_message, encode_message
from .errors import BadCertificate, ProtocolViolation
from .protocols import Config, Instance, RunResult, get, prover_session, verifier_session
from .transcript import InteractiveCoins, Verdict

TAG_HELLO = 0x00
MAX_FRAME = 1 << 26
TIMEOUT = 30.0
POLL_INTERVAL = 0.01


def write_frame(w, pid: int, body: bytes) -> None:
    w.write(struct.pack("<IB", len(body) + 1, pid) + body)
    w.flush()


def read_frame(r):
    """(pid, body) or None at a clean end of stream."""
    head = r.read(4)
    if not head:
        return None
    if len(head) < 4:
        raise BadCertificate("truncated frame header")
    (k,) = struct.unpack("<I", head)
    if not 2 <= k <= MAX_FRAME:
        raise BadCertificate(f"bad frame length {k}")
    data = r.read(k)
    if len(data) < k:
        raise BadCertificate("truncated frame")
    return data[0], data[1:]


def _hello(digest: bytes) -> bytes:
    return bytes([TAG_HELLO]) + digest


def _drive(session, r, w, pid: int, max_elem) -> None:
    """Pump frames between a session and a stream until the session ends."""
    for msg in session.start():
        write_frame(w, pid, encode_message(msg))
    while not session.finished:
        try:
            frame = read_frame(r)
            if frame is None:
                raise BadCertificate("peer closed the connection")
            fpid, body = frame
            if fpid != pid:
                raise BadCertificate(f"frame for protocol {fpid:#x}")
            msg = decode_message(body, max_elem=max_elem)
        except BadCertificate as e:
            if session.is_verifier:
                session.finished = True
                session.verdict = Verdict(False, f"transport: {e}")
            else:
                write_frame(w, pid, bytes([TAG_ABORT]))
                session.finished = True
            return
        for out in session.step(msg):
            write_frame(w, pid, encode_message(out))


def serve_prover_stream(name, inst: Instance, r, w, cfg: Config | None = None, prover=None) -> bool:
    """Answer one verifier on (r, w); False when the handshake fails."""
    proto = get(name)
    frame = read_frame(r)
    digest = inst.digest(proto.pid)
    if frame is None or frame[0] != proto.pid or frame[1] != _hello(digest):
        write_frame(w, proto.pid, bytes([TAG_ABORT]))
        return False
    write_frame(w, proto.pid, _hello(digest))
    _drive(prover_session(name, inst, cfg, prover), r, w, proto.pid, None)
    return True


def verify_stream(name, inst: Instance, r, w, seed=0, cfg: Config | None = None) -> RunResult:
    proto = get(name)
    digest = inst.digest(proto.pid)
    write_frame(w, proto.pid, _hello(digest))
    frame = read_frame(r)
    if frame is None or frame != (proto.pid, _hello(digest)):
        return RunResult(Verdict(False, "handshake failed: prover input or protocol differs"), None, [])
    v = verifier_session(name, inst, InteractiveCoins(seed), cfg)
    _drive(v, r, w, proto.pid, inst.p or None)
    return RunResult(v.verdict, v.stats, v.transcript)


class ProverServer:
    """Threaded TCP prover for one instance; use as a context manager."""

    def __init__(self, name, inst: Instance, host: str = "127.0.0.1", port: int = 0, cfg: Config | None = None, prover=None):
        outer = self

        class Handler(socketserver.StreamRequestHandler):
            timeout = TIMEOUT

            def setup(self):
                self.request.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
                super().setup()

            def handle(self):
                try:
                    serve_prover_stream(name, inst, self.rfile, self.wfile, cfg, prover)
                except (OSError, BadCertificate, ProtocolViolation) as e:
                    outer.errors.append(e)

        self.errors: list = []
        self._server = socketserver.ThreadingTCPServer((host, port), Handler)
        self._server.daemon_threads = True
        self._thread = None

    @property
    def address(self) -> tuple:
        return self._server.server_address[:2]

    def start(self) -> "ProverServer":
        self._thread = threading.Thread(target=self._server.serve_forever, args=(POLL_INTERVAL,), daemon=True)
        self._thread.start()
        return self

    def serve_forever(self) -> None:
        self._server.serve_forever()

    def close(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc):
        self.close()


def remote_verify(name, inst: Instance, host: str, port: int, seed=0, cfg: Config | None = None) -> RunResult:
    with socket.create_connection((host, port), timeout=TIMEOUT) as sock:
        sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        r, w = sock.makefile("rb"), sock.makefile("wb")
        try:
            return verify_stream(name, inst, r, w, seed, cfg)
        finally:
            r.close()
            w.close()
