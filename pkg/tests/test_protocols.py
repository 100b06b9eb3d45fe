import random

import pytest

from lincert.budgets import budget
from lincert.codec import TAG_CHALLENGE, TAG_COMMIT, Message
from lincert.errors import SecurityLevelTooLow
from lincert.field import SampleSet
from lincert.instances import honest_instance, rand_full_column_rank, rand_upper
from lincert.linalg import Matrix
from lincert.oracle import oracle_crp, oracle_det, oracle_rpm, oracle_signature
from lincert.protocols import NAMES, Config, Instance, get, run

P = 101
BIG = (1 << 31) - 1


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("p", [P, BIG])
def test_honest_runs_accept_within_budget(name, p):
    rng = random.Random(f"{name}{p}")
    for k in range(25):
        inst = honest_instance(name, rng, p, max_dim=8)
        res = run(name, inst, seed=k)
        assert res.accepted, (inst.A, res.verdict)
        assert budget(name, inst).check(res.stats) == []


def test_registry_ids_are_unique():
    assert len({get(n).pid for n in NAMES}) == len(NAMES)
    assert get(0x0C).name == "signature"


@pytest.mark.parametrize("name", ["crp_interactive", "crp_const", "crp_ni", "rank_lower", "rpm_full", "rpm_ni"])
def test_zero_and_one_by_one(name):
    for A in (Matrix.zeros(3, 2, P), Matrix([[0]], P), Matrix([[5]], P)):
        assert run(name, Instance(A)).accepted


def test_outputs_match_oracles():
    A = Matrix([[0, 1, 1], [0, 2, 2], [3, 0, 1]], P)
    assert run("crp_interactive", Instance(A)).verdict.value == oracle_crp(A)
    assert run("crp_const", Instance(A)).verdict.value == oracle_crp(A)
    assert run("rpm_full", Instance(A)).verdict.value == oracle_rpm(A)
    assert run("determinant", Instance(A)).verdict.value == oracle_det(A)
    S = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]], None)
    assert run("signature", Instance(S)).verdict.value == oracle_signature(S) == (1, 1, 1)


def test_rank_upper_rejects_a_low_claim():
    A = Matrix([[1, 0], [0, 1]], P)
    assert run("rank_upper", Instance(A, claim=2)).accepted
    results = [run("rank_upper", Instance(A, claim=1), seed=s).accepted for s in range(50)]
    assert sum(results) <= 5


def test_rank_lower_rejects_a_dependent_claim():
    A = Matrix([[1, 2], [2, 4]], P)
    results = [run("rank_lower", Instance(A, claim=[0, 1]), seed=s).accepted for s in range(50)]
    assert sum(results) <= 2


def test_tri_equiv_upper_side():
    rng = random.Random(1)
    A = rand_full_column_rank(rng, 5, 4, P)
    T = rand_upper(rng, 4, P)
    assert run("tri_equiv", Instance(A, A @ T, claim="upper")).accepted
    assert not run("tri_equiv", Instance(A, A @ T.T, claim="upper")).accepted


def test_grp_with_precheck():
    A = Matrix([[2, 1], [1, 1]], P)
    res = run("grp", Instance(A), cfg=Config(grp_precheck=True))
    assert res.accepted and res.stats.mu_count == 2
    assert not run("grp", Instance(Matrix([[0, 1], [1, 0]], P))).accepted


def test_constant_round_needs_a_large_sample_set():
    rng = random.Random(2)
    inst = honest_instance("tri_equiv_const", rng, P, max_dim=8)
    while inst.A.n < 4:
        inst = honest_instance("tri_equiv_const", rng, P, max_dim=8)
    with pytest.raises(SecurityLevelTooLow):
        run("tri_equiv_const", inst, cfg=Config(sample_set=SampleSet("range", 1, 4)))
    with pytest.raises(SecurityLevelTooLow):
        run("crp_const", Instance(Matrix.identity(5, 7)))


def test_signature_rejects_asymmetric_input():
    res = run("signature", Instance(Matrix([[1, 2], [3, 4]], None)))
    assert not res.accepted and "symmetric" in res.verdict.reason


def test_square_only_protocols_reject_rectangles():
    A = Matrix([[1, 2, 3], [4, 5, 6]], P)
    for name in ("grp", "ldup", "determinant", "rpm_invertible"):
        assert not run(name, Instance(A)).accepted


def test_freivalds_detects_a_wrong_product():
    A = Matrix([[1, 2], [3, 4]], P)
    B = Matrix([[5, 6], [7, 8]], P)

    def wrong(inst, cfg):
        C = inst.A @ inst.B
        C.rows[1][1] += 1
        yield Message(TAG_COMMIT, C.flat())

    assert sum(run("freivalds", Instance(A, B), seed=s, prover=wrong).accepted for s in range(50)) <= 3


def test_wrong_tag_is_rejected():
    def wrong_tag(inst, cfg):
        yield Message(TAG_CHALLENGE, [1])

    res = run("ldup", Instance(Matrix.identity(3, P)), prover=wrong_tag)
    assert not res.accepted and "malformed" in res.verdict.reason
