import random

import pytest

from lincert.errors import BadCertificate, DigestMismatch
from lincert.fiat_shamir import CertificateFile, fs_prove, fs_verify
from lincert.instances import honest_instance
from lincert.linalg import Matrix
from lincert.protocols import NAMES, Instance

BIG = (1 << 31) - 1


@pytest.mark.parametrize("name", NAMES)
def test_round_trip_and_determinism(name):
    rng = random.Random(name)
    for _ in range(5):
        inst = honest_instance(name, rng, BIG, max_dim=6)
        cert = fs_prove(name, inst)
        data = cert.to_bytes()
        assert data == fs_prove(name, inst).to_bytes()
        assert CertificateFile.from_bytes(data) == cert
        assert fs_verify(data, inst).accepted


def _cert():
    inst = Instance(Matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]], BIG))
    return inst, fs_prove("crp_interactive", inst).to_bytes()


def test_other_input_is_refused():
    inst, data = _cert()
    other = Instance(Matrix([[1, 2, 3], [2, 4, 6], [0, 1, 2]], BIG))
    with pytest.raises(DigestMismatch):
        fs_verify(data, other)
    with pytest.raises(BadCertificate):
        fs_verify(data, Instance(Matrix([[1, 2], [3, 4]], BIG)))


def test_structural_damage():
    inst, data = _cert()
    with pytest.raises(BadCertificate):
        CertificateFile.from_bytes(b"XXXX" + data[4:])
    with pytest.raises(BadCertificate):
        CertificateFile.from_bytes(data + b"\x00")
    with pytest.raises(BadCertificate):
        CertificateFile.from_bytes(data[:-1])


def test_dropped_or_extra_messages_are_rejected():
    inst, data = _cert()
    cert = CertificateFile.from_bytes(data)
    short = CertificateFile(**{**cert.__dict__, "messages": cert.messages[:-1]})
    assert not fs_verify(short, inst).accepted
    longer = CertificateFile(**{**cert.__dict__, "messages": cert.messages + cert.messages[-1:]})
    assert not fs_verify(longer, inst).accepted
