import io
import os
import threading

from lincert.codec import TAG_ABORT
from lincert.linalg import Matrix
from lincert.protocols import Instance, run
from lincert.wire import ProverServer, read_frame, remote_verify, serve_prover_stream, verify_stream, write_frame

P = 101


def test_frame_round_trip():
    buf = io.BytesIO()
    write_frame(buf, 7, b"\x01abc")
    buf.seek(0)
    assert read_frame(buf) == (7, b"\x01abc")
    assert read_frame(buf) is None


def test_tcp_matches_in_process():
    inst = Instance(Matrix([[1, 2, 0], [2, 4, 1]], P))
    with ProverServer("rpm_full", inst) as srv:
        remote = remote_verify("rpm_full", inst, *srv.address, seed=3)
    local = run("rpm_full", inst, seed=3)
    assert remote.accepted
    assert (remote.verdict, remote.stats, remote.transcript) == (local.verdict, local.stats, local.transcript)


def test_handshake_refuses_other_input():
    inst = Instance(Matrix([[1, 2], [3, 4]], P))
    other = Instance(Matrix([[1, 2], [3, 5]], P))
    with ProverServer("ldup", inst) as srv:
        res = remote_verify("ldup", other, *srv.address)
    assert not res.accepted and "handshake" in res.verdict.reason


def test_pipes_transport():
    inst = Instance(Matrix([[2, 1], [1, 1]], P))
    v_to_p_r, v_to_p_w = os.pipe()
    p_to_v_r, p_to_v_w = os.pipe()

    def prover():
        with os.fdopen(v_to_p_r, "rb") as r, os.fdopen(p_to_v_w, "wb") as w:
            serve_prover_stream("grp", inst, r, w)

    t = threading.Thread(target=prover)
    t.start()
    with os.fdopen(p_to_v_r, "rb") as r, os.fdopen(v_to_p_w, "wb") as w:
        res = verify_stream("grp", inst, r, w, seed=1)
    t.join()
    assert res.accepted and res.stats.mu_count == 1


def test_garbage_from_prover_is_rejected():
    inst = Instance(Matrix([[2, 1], [1, 1]], P))
    hello = io.BytesIO()
    verify_stream("grp", inst, io.BytesIO(), hello)  # records the verifier hello
    inbox = io.BytesIO()
    inbox.write(hello.getvalue())  # a prover echoes the hello verbatim
    write_frame(inbox, 0x05, b"\x99junk")
    inbox.seek(0)
    res = verify_stream("grp", inst, inbox, io.BytesIO())
    assert not res.accepted and "transport" in res.verdict.reason


def test_prover_answers_bad_hello_with_abort():
    inst = Instance(Matrix([[2, 1], [1, 1]], P))
    r = io.BytesIO()
    write_frame(r, 0x05, b"\x00" + b"\x00" * 32)
    r.seek(0)
    w = io.BytesIO()
    assert not serve_prover_stream("grp", inst, r, w)
    w.seek(0)
    assert read_frame(w) == (0x05, bytes([TAG_ABORT]))
