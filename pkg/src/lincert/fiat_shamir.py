"""Non-interactive certificates: verifier challenges are squeezed from a hash
chain over the certificate header and every prior prover message.

Binary layout (little-endian)::

    "LCRT" | version u8 | protocol u8 | hash id u8 | p u64 | m u32 | n u32
    | input digest (32 bytes) | message count u32 | (u32 length, message)*

A message is its tag byte followed by the canonical payload of ``codec``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from .codec import Message, decode_message, encode_message
from .errors import BadCertificate, DigestMismatch
from .protocols import BY_ID, Config, Instance, get, prover_session, verifier_session
from .transcript import FiatShamirCoins, Verdict, run_sessions

MAGIC = b"LCRT"
VERSION = 1
HASH_SHA256 = 1
_HEADER = struct.Struct("<4sBBBQII32s")


@dataclass
class CertificateFile:
    protocol_id: int
    p: int
    m: int
    n: int
    digest: bytes
    messages: list = field(default_factory=list)
    hash_id: int = HASH_SHA256
    version: int = VERSION

    def header_bytes(self) -> bytes:
        return _HEADER.pack(MAGIC, self.version, self.protocol_id, self.hash_id, self.p, self.m, self.n, self.digest)

    def to_bytes(self) -> bytes:
        out = [self.header_bytes(), struct.pack("<I", len(self.messages))]
        for msg in self.messages:
            body = encode_message(msg)
            out.append(struct.pack("<I", len(body)) + body)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "CertificateFile":
        if len(data) < _HEADER.size + 4:
            raise BadCertificate("certificate too short")
        magic, version, pid, hid, p, m, n, digest = _HEADER.unpack_from(data, 0)
        if magic != MAGIC:
            raise BadCertificate("bad magic")
        if version != VERSION:
            raise BadCertificate(f"unsupported version {version}")
        if hid != HASH_SHA256:
            raise BadCertificate(f"unknown hash id {hid}")
        if pid not in BY_ID:
            raise BadCertificate(f"unknown protocol id {pid}")
        pos = _HEADER.size
        (count,) = struct.unpack_from("<I", data, pos)
        pos += 4
        msgs = []
        for _ in range(count):
            if pos + 4 > len(data):
                raise BadCertificate("truncated message length")
            (k,) = struct.unpack_from("<I", data, pos)
            pos += 4
            if pos + k > len(data):
                raise BadCertificate("truncated message")
            msgs.append(decode_message(data[pos : pos + k], max_elem=p or None))
            pos += k
        if pos != len(data):
            raise BadCertificate("trailing bytes after the last message")
        return cls(pid, p, m, n, digest, msgs, hid, version)


def _header_for(name, inst: Instance) -> CertificateFile:
    proto = get(name)
    return CertificateFile(proto.pid, inst.p or 0, inst.A.m, inst.A.n, inst.digest(proto.pid))


def fs_prove(name, inst: Instance, cfg: Config | None = None, prover=None) -> CertificateFile:
    cert = _header_for(name, inst)
    v = verifier_session(name, inst, FiatShamirCoins(cert.header_bytes()), cfg)
    p = prover_session(name, inst, cfg, prover)
    run_sessions(p, v)
    cert.messages = [msg for direction, msg in v.transcript if direction == "in"]
    return cert


def fs_verify(cert: CertificateFile | bytes, inst: Instance, cfg: Config | None = None) -> Verdict:
    """Replay the certificate against a fresh verifier.

    Raises BadCertificate on structural or header problems and DigestMismatch
    when the certificate was made for another input.
    """
    if isinstance(cert, (bytes, bytearray)):
        cert = CertificateFile.from_bytes(bytes(cert))
    expected = _header_for(cert.protocol_id, inst)
    if (cert.p, cert.m, cert.n) != (expected.p, expected.m, expected.n):
        raise BadCertificate("header does not match the input dimensions or modulus")
    if cert.digest != expected.digest:
        raise DigestMismatch("input digest differs")
    v = verifier_session(cert.protocol_id, inst, FiatShamirCoins(cert.header_bytes()), cfg)
    v.start()
    for msg in cert.messages:
        if v.finished:
            return Verdict(False, "certificate has extra messages")
        v.step(msg)
    if not v.finished:
        return Verdict(False, "certificate ends before the verifier decides")
    return v.verdict
