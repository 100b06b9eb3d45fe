"""Cheating provers and detection-rate measurement.

Each attack pairs an instance generator with a dishonest prover and a lower
bound on the probability that the verifier rejects. Attacks whose bound is
``None`` are expected to be accepted every time.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .codec import TAG_CHALLENGE, TAG_COORD_CHAL, TAG_COORD_RESP, TAG_RESPONSE, Message
from .errors import PivotFailure
from .instances import rand_full_column_rank, rand_matrix, rand_nonsingular, rand_rank, rand_unit_lower, rand_upper
from .linalg import LdupFactors, Matrix, Permutation, ldup, lu_nopivot, pluq_crp, rank, solve, solve_matrix
from .protocols import Config, Instance, run
from .protocols.basic import tri_equiv_const_prover, tri_equiv_prover
from .protocols.common import commit, p_rank_lower
from .protocols.lu import grp_prover, ldup_prover, p_rpm_invertible
from .protocols.profiles import crp_interactive_prover
from .transcript import expect


@dataclass(frozen=True)
class Attack:
    name: str
    protocol: str
    make_instance: Callable  # (rng, p) -> (Instance, prover generator factory)
    bound: Callable | None  # (sample_set_size, inst) -> detection lower bound

    @property
    def expects_acceptance(self) -> bool:
        return self.bound is None


@dataclass
class DetectionReport:
    attack: str
    protocol: str
    trials: int
    rejected: int
    bound: float | None
    stated: float | None = None  # claimed protocol-level bound

    @property
    def rate(self) -> float:
        return self.rejected / self.trials

    def _meets(self, bound: float | None) -> bool:
        if bound is None:
            return True
        return self.rate >= bound - 3 * math.sqrt(bound * (1 - bound) / self.trials)

    @property
    def sigma(self) -> float:
        b = self.bound or 0.0
        return math.sqrt(b * (1 - b) / self.trials)

    @property
    def passes(self) -> bool:
        if self.bound is None:
            return self.rejected == 0
        return self._meets(self.bound)

    @property
    def meets_stated(self) -> bool:
        if self.bound is None:
            return self.rejected == 0
        return self._meets(self.stated)

    def row(self) -> str:
        bound = "accept" if self.bound is None else f"{self.bound:.4f}"
        stated = "-" if self.stated is None else f"{self.stated:.4f}"
        return (
            f"{self.attack:<26} {self.protocol:<16} {self.trials:>6} {self.rate:>8.4f} {bound:>8} "
            f"{'ok' if self.passes else 'FAIL'} {stated:>8} {'ok' if self.meets_stated else 'FAIL'}"
        )


# ---------------------------------------------------------------- strategies


def _freivalds_rank_one(rng, p):
    A = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), p)
    B = rand_matrix(rng, A.n, rng.randint(1, 6), p)

    def prover(inst, cfg):
        C = inst.A @ inst.B
        C.rows[0][0] = (C.rows[0][0] + 1) % p
        yield commit(elems=C.flat())

    return Instance(A, B), prover


def _upper_entry_transform(rng, p, n):
    """Lower triangular T plus a nonzero top-right entry."""
    T = rand_upper(rng, n, p, nonsingular=False).T
    T.rows[0][n - 1] = rng.randrange(1, p)
    return T


def _tri_equiv_upper_entry(rng, p):
    n = rng.randint(2, 5)
    A = rand_full_column_rank(rng, rng.randint(n, 6), n, p)
    T = _upper_entry_transform(rng, p, n)
    return Instance(A, A @ T, claim="lower"), lambda inst, cfg: tri_equiv_prover(inst, cfg, T=T)


def _tri_equiv_const_truncated(rng, p):
    n = rng.randint(2, 5)
    A = rand_full_column_rank(rng, rng.randint(n, 6), n, p)
    T = _upper_entry_transform(rng, p, n)
    # the polynomial keeps only the lower part of T, the response uses all of it
    return Instance(A, A @ T, claim="lower"), lambda inst, cfg: tri_equiv_const_prover(inst, cfg, T=T)


def _grp_scaling(rng, p):
    n = rng.randint(1, 6)
    L, U = rand_unit_lower(rng, n, p), rand_upper(rng, n, p)
    c = [rng.randrange(1, p) for _ in range(n)]
    Ls = Matrix._raw([[L.rows[i][j] * c[j] % p for j in range(n)] for i in range(n)], p, n)
    Us = Matrix._raw([[U.rows[i][j] * pow(c[i], -1, p) % p for j in range(n)] for i in range(n)], p, n)
    return Instance(L @ U), lambda inst, cfg: grp_prover(inst, cfg, factors=(Ls, Us))


def _grp_perturbed(rng, p):
    """A has a zero leading entry; the prover factors A + e₀e₀ᵀ instead."""
    while True:
        n = rng.randint(2, 6)
        A = rand_matrix(rng, n, n, p)
        A.rows[0][0] = 0
        shifted = Matrix._raw(A.copy_rows(), p, n)
        shifted.rows[0][0] = 1
        try:
            factors = lu_nopivot(shifted)
        except PivotFailure:
            continue
        return Instance(A), lambda inst, cfg: grp_prover(inst, cfg, factors=factors)


def _ldup_altered_pivot(rng, p):
    A = rand_nonsingular(rng, rng.randint(1, 6), p)
    f = ldup(A)
    D = list(f.D)
    D[0] = D[0] + 1 if D[0] + 1 < p else 2
    bad = LdupFactors(f.L, D, f.U1, f.P)
    return Instance(A), lambda inst, cfg: ldup_prover(inst, cfg, factors=bad)


def _rank_upper_false(rng, p):
    while True:
        A = rand_rank(rng, rng.randint(2, 4), rng.randint(2, 4), p)
        if rank(A) >= 1:
            break
    R = rank(A) - 1

    def prover(inst, cfg):
        msg = yield expect(TAG_CHALLENGE, elems=A.m)
        w = list(msg.elems)
        for S in combinations(range(A.n), R):
            sub = solve(A.submatrix(range(A.m), S), w) if S else ([] if not any(w) else None)
            if sub is not None:
                gamma = [0] * A.n
                for j, g in zip(S, sub):
                    gamma[j] = g
                break
        else:
            gamma = [0] * A.n
        yield Message(TAG_RESPONSE, gamma)

    return Instance(A, claim=R), prover


def _rank_lower_dependent(rng, p):
    while True:
        A = rand_rank(rng, rng.randint(2, 5), rng.randint(2, 5), p)
        J = pluq_crp(A).pivot_columns()
        extra = [j for j in range(A.n) if j not in J]
        if J and extra:
            break
    claim = sorted(J + [rng.choice(extra)])

    def prover(inst, cfg):
        yield commit(idx=claim)
        yield from p_rank_lower(inst.A, claim)

    return Instance(A, claim=claim), prover


def _crp_skip_pivot(rng, p):
    A = Matrix([[1, 0, 1], [0, 1, 1]], p)
    J = [0, 2]

    def prover(inst, cfg):
        yield commit(idx=J)
        yield from p_rank_lower(inst.A, J)
        msg = yield expect(TAG_CHALLENGE, elems=3)
        v = msg.elems
        # Γ solves A_J·Γ = A·Diag(v)·W but has a lower entry v₁ the exchange cannot carry
        G = solve_matrix(A.submatrix(range(2), J), Matrix([[v[0], v[0] + v[2]], [v[1], v[1] + v[2]]], p))
        x = [0, 0]
        for j in (1, 0):
            m = yield expect(TAG_COORD_CHAL, elems=1)
            x[j] = m.elems[0]
            yield Message(TAG_COORD_RESP, [sum(G.rows[j][k] * x[k] for k in range(j, 2)) % p])

    return Instance(A), prover


def _rpm_wrong_permutation(rng, p):
    A = Matrix([[1, 1], [1, 0]], p)
    # a valid LDUP whose PᵀUP is lower triangular
    f = LdupFactors(Matrix.identity(2, p), [1, 1], Matrix([[1, 1], [0, 1]], p), Permutation([1, 0]))
    return Instance(A), lambda inst, cfg: p_rpm_invertible(inst.A, factors=f)


def _honest_crp(rng, p):
    return Instance(rand_rank(rng, rng.randint(1, 6), rng.randint(1, 6), p)), crp_interactive_prover


ATTACKS = [
    Attack("freivalds_rank_one", "freivalds", _freivalds_rank_one, lambda s, inst: 1 - 1 / s),
    Attack("tri_equiv_upper_entry", "tri_equiv", _tri_equiv_upper_entry, lambda s, inst: 1 - 1 / s),
    Attack(
        "tri_equiv_const_truncated",
        "tri_equiv_const",
        _tri_equiv_const_truncated,
        lambda s, inst: 1 - (2 * inst.A.n - 2) / (s - 1),
    ),
    Attack("grp_scaling", "grp", _grp_scaling, None),
    Attack("grp_perturbed", "grp", _grp_perturbed, lambda s, inst: (1 - 1 / s) ** 2),
    Attack("ldup_altered_pivot", "ldup", _ldup_altered_pivot, lambda s, inst: (1 - 1 / s) ** 2),
    Attack("rank_upper_false", "rank_upper", _rank_upper_false, lambda s, inst: 1 - math.comb(inst.A.n, inst.claim) / s),
    Attack("rank_lower_dependent", "rank_lower", _rank_lower_dependent, lambda s, inst: 1 - 1 / (s - len(inst.claim)) if s > len(inst.claim) + 1 else 0.0),
    Attack("crp_skip_pivot", "crp_interactive", _crp_skip_pivot, lambda s, inst: (1 - 1 / s) ** 2),
    Attack("rpm_wrong_permutation", "rpm_invertible", _rpm_wrong_permutation, lambda s, inst: (1 - 1 / s) ** 2),
    Attack("honest", "crp_interactive", _honest_crp, None),
]
BY_ATTACK = {a.name: a for a in ATTACKS}

# Claimed per-protocol detection bounds, (s, n) -> bound.
# rank_upper's claim ignores the union over supports and can sit above the true rate.
STATED_BOUNDS = {
    "freivalds": lambda s, n: 1 - 1 / s,
    "tri_equiv": lambda s, n: 1 - 1 / s,
    "rank_upper": lambda s, n: 1 - 1 / s,
    "rank_lower": lambda s, n: 1 - 1 / s,
    "crp_interactive": lambda s, n: 1 - 1 / s,
    "grp": lambda s, n: (1 - 1 / s) ** (2 * n),
    "ldup": lambda s, n: (1 - 1 / s) ** (2 * n),
    "rpm_invertible": lambda s, n: (1 - 1 / s) ** (2 * n),
    "tri_equiv_const": lambda s, n: 1 - 2 * (n - 1) / s,
    "crp_const": lambda s, n: 1 - 2 * (n - 1) / s,
}


def run_attack(attack: Attack | str, trials: int = 1000, p: int = 101, seed: int = 0, cfg: Config | None = None) -> DetectionReport:
    """Run fresh instances against seeded verifiers; the bound is averaged over instances."""
    attack = BY_ATTACK[attack] if isinstance(attack, str) else attack
    cfg = cfg or Config()
    size = cfg.sample_set.size(p)
    rng = random.Random(seed)
    stated_of = STATED_BOUNDS.get(attack.protocol)
    rejected, bound_sum, stated_sum = 0, 0.0, 0.0
    for t in range(trials):
        inst, prover = attack.make_instance(rng, p)
        if attack.bound is not None:
            bound_sum += min(1.0, max(0.0, attack.bound(size, inst)))
        if stated_of is not None:
            stated_sum += min(1.0, max(0.0, stated_of(size, inst.A.n)))
        result = run(attack.protocol, inst, seed=f"{seed}:{t}", cfg=cfg, prover=prover)
        rejected += not result.accepted
    bound = None if attack.bound is None else bound_sum / trials
    stated = None if attack.bound is None or stated_of is None else stated_sum / trials
    return DetectionReport(attack.name, attack.protocol, trials, rejected, bound, stated)
