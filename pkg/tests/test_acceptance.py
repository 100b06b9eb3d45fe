"""Acceptance checks. Each prints one PASS/FAIL line.

Run with ``pytest -v tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from functools import lru_cache

import pytest

from lincert.adversary import ATTACKS, run_attack
from lincert.budgets import budget
from lincert.errors import LincertError
from lincert.fiat_shamir import fs_prove, fs_verify
from lincert.instances import honest_instance, rand_rank, rand_symmetric_int
from lincert.linalg import Matrix
from lincert.oracle import oracle_crp, oracle_det, oracle_rank, oracle_rpm, oracle_rrp, oracle_signature
from lincert.protocols import NAMES, Instance, run
from lincert.wire import ProverServer, remote_verify

FIELDS = (101, (1 << 31) - 1)
COMPLETENESS_PER_FIELD = 1000
COMPLETENESS_SECONDS = 120.0
MU_RULES = {
    "grp": (1, True),
    "ldup": (1, True),
    "freivalds": (3, True),
    "rank_upper": (2, True),
    "rank_lower": (1, True),
    "crp_interactive": (2, False),
    "rpm_full": (4, False),
}


@lru_cache(maxsize=1)
def honest_runs():
    """(protocol, instance, stats, accepted) for every honest run, plus elapsed seconds."""
    start = time.perf_counter()
    out = []
    for name in NAMES:
        fields = (None,) if name == "signature" else FIELDS
        for p in fields:
            rng = random.Random(f"complete:{name}:{p}")
            for k in range(COMPLETENESS_PER_FIELD):
                inst = honest_instance(name, rng, p or FIELDS[0], max_dim=16)
                res = run(name, inst, seed=k)
                out.append((name, inst, res.stats, res.accepted))
    return out, time.perf_counter() - start


def check_completeness():
    runs, elapsed = honest_runs()
    failed = [(n, i) for n, i, _, ok in runs if not ok]
    ok = not failed and elapsed < COMPLETENESS_SECONDS
    return ok, f"{len(runs)} honest runs over {len(NAMES)} protocols, {len(failed)} rejected, {elapsed:.1f}s"


def check_budgets():
    runs, _ = honest_runs()
    bad = []
    for name, inst, stats, _ in runs:
        problems = budget(name, inst).check(stats)
        if problems:
            bad.append((name, problems))
    detail = f"{len(runs)} runs checked, {len(bad)} over budget"
    if bad:
        detail += f"; first: {bad[0]}"
    return not bad, detail


def check_mu_counts():
    runs, _ = honest_runs()
    bad = []
    for name, _, stats, _ in runs:
        if name in MU_RULES:
            want, exact = MU_RULES[name]
            if (stats.mu_count != want) if exact else (stats.mu_count > want):
                bad.append((name, stats.mu_count))
    rules = ", ".join(f"{n} {'=' if e else '<='}{w}" for n, (w, e) in MU_RULES.items())
    return not bad, f"{rules}; {len(bad)} violations"


ORACLE_INSTANCES = 500
ORACLE_MAX_DIM = 12


def _oracle_cases(rng):
    p = rng.choice(FIELDS)
    return p, rand_rank(rng, rng.randint(1, ORACLE_MAX_DIM), rng.randint(1, ORACLE_MAX_DIM), p)


def check_oracle_equivalence():
    rng = random.Random("oracle")
    mismatches = {k: 0 for k in ("rank", "crp", "rrp", "rpm", "det", "signature", "rpm_exhaustive")}
    for k in range(ORACLE_INSTANCES):
        _, A = _oracle_cases(rng)
        J = run("crp_interactive", Instance(A), seed=k).verdict.value
        mismatches["rank"] += J is None or len(J) != oracle_rank(A)
        mismatches["crp"] += J != oracle_crp(A)
        I = run("crp_interactive", Instance(A.T), seed=k).verdict.value
        mismatches["rrp"] += I != oracle_rrp(A)
        R = run("rpm_full", Instance(A), seed=k).verdict.value
        mismatches["rpm"] += R is None or R.rows != oracle_rpm(A).rows
        p, n = A.p, rng.randint(1, ORACLE_MAX_DIM)
        S = rand_rank(rng, n, n, p, rng.choice([n, n, rng.randint(0, n)]))
        d = run("determinant", Instance(S), seed=k)
        mismatches["det"] += not d.accepted or d.verdict.value != oracle_det(S)
        B = rand_symmetric_int(rng, rng.randint(1, ORACLE_MAX_DIM))
        s = run("signature", Instance(B), seed=k)
        mismatches["signature"] += not s.accepted or s.verdict.value != oracle_signature(B)
    exhaustive = 0
    for p in (2, 3):
        for m, n in ((2, 2), (2, 3)):
            for flat in itertools.product(range(p), repeat=m * n):
                A = Matrix.from_flat(m, n, list(flat), p)
                R = run("rpm_full", Instance(A), seed=exhaustive)
                exhaustive += 1
                mismatches["rpm_exhaustive"] += not R.accepted or R.verdict.value.rows != oracle_rpm(A).rows
    detail = ", ".join(f"{k} {v}" for k, v in mismatches.items())
    return not any(mismatches.values()), f"{ORACLE_INSTANCES} instances each plus {exhaustive} exhaustive; mismatches: {detail}"


SOUNDNESS_TRIALS = 1000


def check_soundness():
    reports = [run_attack(a, trials=SOUNDNESS_TRIALS, p=101, seed=7) for a in ATTACKS]
    failed = [r.attack for r in reports if not (r.passes and r.meets_stated)]
    scaling = next(r for r in reports if r.attack == "grp_scaling")
    ok = not failed and scaling.rate == 0.0
    summary = " ".join(f"{r.attack}={r.rate:.3f}" for r in reports)
    return ok, f"{len(reports)} strategies x {SOUNDNESS_TRIALS} trials on F_101, failing: {failed or 'none'}; {summary}"


FS_CERTIFICATES = 100
# hash-derived challenges need a large field; over F_101 one challenge misses a bad entry with probability 1/101
FS_PRIME = (1 << 31) - 1


def check_fiat_shamir():
    rng = random.Random("fs")
    round_trip_fail = nondeterministic = accepted_mutations = mutations = 0
    for k in range(FS_CERTIFICATES):
        name = NAMES[k % len(NAMES)]
        inst = honest_instance(name, rng, FS_PRIME, max_dim=6)
        data = fs_prove(name, inst).to_bytes()
        nondeterministic += data != fs_prove(name, inst).to_bytes()
        round_trip_fail += not fs_verify(data, inst).accepted
        for pos in range(len(data)):
            mutated = bytearray(data)
            mutated[pos] ^= rng.randrange(1, 256)
            mutations += 1
            try:
                accepted_mutations += fs_verify(bytes(mutated), inst).accepted
            except LincertError:
                pass
    ok = not (round_trip_fail or nondeterministic or accepted_mutations)
    return ok, (
        f"{FS_CERTIFICATES} certificates: {round_trip_fail} round-trip failures, {nondeterministic} nondeterministic,"
        f" {accepted_mutations} of {mutations} single-byte mutations accepted"
    )


WIRE_PER_PROTOCOL = 50


def check_wire_parity():
    rng = random.Random("wire")
    differ = 0
    for name in NAMES:
        for k in range(WIRE_PER_PROTOCOL):
            inst = honest_instance(name, rng, rng.choice(FIELDS), max_dim=10)
            local = run(name, inst, seed=k)
            with ProverServer(name, inst) as srv:
                remote = remote_verify(name, inst, *srv.address, seed=k)
            same = (local.verdict, local.stats, local.transcript) == (remote.verdict, remote.stats, remote.transcript)
            differ += not (same and remote.accepted)
    return not differ, f"{WIRE_PER_PROTOCOL} instances x {len(NAMES)} protocols over TCP, {differ} differ from in-process"


CHECKS = [
    ("1 completeness", check_completeness),
    ("2 communication budgets", check_budgets),
    ("3 matrix-vector product counts", check_mu_counts),
    ("4 oracle equivalence", check_oracle_equivalence),
    ("5 soundness", check_soundness),
    ("6 Fiat-Shamir certificates", check_fiat_shamir),
    ("7 wire parity", check_wire_parity),
]


def _line(label, ok, detail) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"


@pytest.mark.parametrize("label,check", CHECKS, ids=[c[0].split(" ", 1)[1].replace(" ", "_") for c in CHECKS])
def test_acceptance(label, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(label, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(label, *check()) for label, check in CHECKS]
    for r in results:
        print(_line(*r))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
