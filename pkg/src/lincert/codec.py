"""Canonical byte encoding of messages, shared by hashing, certificates and the wire."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadCertificate

TAG_COMMIT = 1
TAG_CHALLENGE = 2
TAG_RESPONSE = 3
TAG_COORD_CHAL = 4
TAG_COORD_RESP = 5
TAG_POLY = 6
TAG_BADPRIME = 7
TAG_PRIME = 8
TAG_ABORT = 0xFF

KNOWN_TAGS = frozenset(
    {TAG_COMMIT, TAG_CHALLENGE, TAG_RESPONSE, TAG_COORD_CHAL, TAG_COORD_RESP, TAG_POLY, TAG_BADPRIME, TAG_PRIME, TAG_ABORT}
)


@dataclass(frozen=True)
class Message:
    tag: int
    elems: tuple = ()
    idx: tuple = ()
    rats: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "elems", tuple(self.elems))
        object.__setattr__(self, "idx", tuple(self.idx))
        object.__setattr__(self, "rats", tuple(self.rats))

    @property
    def size(self) -> int:
        """Scalar items carried: field elements, indices and rationals."""
        return len(self.elems) + len(self.idx) + len(self.rats)


def _enc_int(x: int) -> bytes:
    mag = abs(x)
    raw = mag.to_bytes((mag.bit_length() + 7) // 8, "little")
    return struct.pack("<I", len(raw)) + raw


def _enc_rat(q: Fraction) -> bytes:
    return bytes([1 if q < 0 else 0]) + _enc_int(q.numerator) + _enc_int(q.denominator)


def encode_payload(msg: Message) -> bytes:
    out = [struct.pack("<III", len(msg.elems), len(msg.idx), len(msg.rats))]
    out.append(struct.pack(f"<{len(msg.elems)}Q", *msg.elems))
    out.append(struct.pack(f"<{len(msg.idx)}I", *msg.idx))
    out.extend(_enc_rat(q) for q in msg.rats)
    return b"".join(out)


def encode_message(msg: Message) -> bytes:
    return bytes([msg.tag]) + encode_payload(msg)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, k: int) -> bytes:
        if k < 0 or self.pos + k > len(self.data):
            raise BadCertificate("truncated data")
        b = self.data[self.pos : self.pos + k]
        self.pos += k
        return b

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def done(self):
        if self.pos != len(self.data):
            raise BadCertificate("trailing bytes")


def _dec_nat(r: _Reader) -> int:
    (k,) = r.unpack("<I")
    raw = r.take(k)
    if raw and raw[-1] == 0:
        raise BadCertificate("non-minimal integer encoding")
    return int.from_bytes(raw, "little")


def _dec_rat(r: _Reader) -> Fraction:
    (sign,) = r.take(1)
    num, den = _dec_nat(r), _dec_nat(r)
    if sign not in (0, 1) or den == 0 or (sign and num == 0):
        raise BadCertificate("malformed rational")
    q = Fraction(-num if sign else num, den)
    if q.denominator != den:
        raise BadCertificate("rational not in lowest terms")
    return q


def decode_payload(tag: int, data: bytes, max_elem: int | None = None) -> Message:
    r = _Reader(data)
    ne, ni, nr = r.unpack("<III")
    if 8 * ne + 4 * ni + 9 * nr > len(data):
        raise BadCertificate("declared counts exceed payload")
    elems = r.unpack(f"<{ne}Q")
    if max_elem is not None and any(e >= max_elem for e in elems):
        raise BadCertificate("field element out of range")
    idx = r.unpack(f"<{ni}I")
    rats = tuple(_dec_rat(r) for _ in range(nr))
    r.done()
    return Message(tag, elems, idx, rats)


def decode_message(data: bytes, max_elem: int | None = None) -> Message:
    if not data:
        raise BadCertificate("empty message")
    if data[0] not in KNOWN_TAGS:
        raise BadCertificate(f"unknown tag {data[0]}")
    return decode_payload(data[0], data[1:], max_elem)
