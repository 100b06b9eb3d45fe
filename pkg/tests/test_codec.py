import struct
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lincert.codec import TAG_COMMIT, TAG_RESPONSE, Message, decode_message, encode_message
from lincert.errors import BadCertificate

elems = st.lists(st.integers(0, 2**64 - 1), max_size=8)
idx = st.lists(st.integers(0, 2**32 - 1), max_size=8)
rats = st.lists(st.fractions(max_denominator=10**12).map(lambda q: q * 10**9), max_size=5)


@given(st.sampled_from([TAG_COMMIT, TAG_RESPONSE]), elems, idx, rats)
def test_round_trip(tag, e, i, r):
    msg = Message(tag, e, i, r)
    data = encode_message(msg)
    assert decode_message(data) == msg
    assert msg.size == len(e) + len(i) + len(r)


def test_big_rationals_round_trip():
    q = Fraction(-(3**200), 7**90)
    assert decode_message(encode_message(Message(TAG_COMMIT, rats=[q]))).rats == (q,)


def test_unknown_tag():
    with pytest.raises(BadCertificate):
        decode_message(b"\x42" + struct.pack("<III", 0, 0, 0))


def test_truncation_and_trailing_bytes():
    data = encode_message(Message(TAG_COMMIT, [1, 2], [3], [Fraction(5, 7)]))
    for k in range(len(data)):
        with pytest.raises(BadCertificate):
            decode_message(data[:k])
    with pytest.raises(BadCertificate):
        decode_message(data + b"\x00")


def test_element_bound():
    data = encode_message(Message(TAG_RESPONSE, [100]))
    assert decode_message(data, max_elem=101).elems == (100,)
    with pytest.raises(BadCertificate):
        decode_message(data, max_elem=100)


def _rat_bytes(sign, num: bytes, den: bytes) -> bytes:
    head = bytes([TAG_COMMIT]) + struct.pack("<III", 0, 0, 1)
    return head + bytes([sign]) + struct.pack("<I", len(num)) + num + struct.pack("<I", len(den)) + den


def test_non_canonical_rationals():
    assert decode_message(_rat_bytes(1, b"\x02", b"\x03")).rats == (Fraction(-2, 3),)
    for bad in (
        _rat_bytes(0, b"\x02", b"\x04"),  # not in lowest terms
        _rat_bytes(0, b"\x02\x00", b"\x03"),  # leading zero byte
        _rat_bytes(1, b"", b"\x01"),  # negative zero
        _rat_bytes(2, b"\x02", b"\x03"),  # bad sign byte
        _rat_bytes(0, b"\x02", b""),  # zero denominator
    ):
        with pytest.raises(BadCertificate):
            decode_message(bad)
