"""Signature of an integer symmetric matrix: profile and rank modulo one random
prime, then a block LDLᵀ with rational blocks checked modulo a second one."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..codec import TAG_BADPRIME, TAG_COMMIT, TAG_PRIME, Message
from ..errors import PivotFailure, SingularMatrix
from ..field import WHOLE, is_prime, primes_between
from ..linalg import BlockDiagonal, Matrix, conjugate_by_perm, pluq_crp, symmetric_block_ldlt, symmetric_pivot_order
from ..transcript import Expect, VerifierCtx, expect
from .common import (
    Config,
    Instance,
    check_permutation,
    commit,
    dot,
    p_crp_steps,
    p_ldup_loop,
    p_rank_lower,
    reject_if,
    v_crp_steps,
    v_ldup_loop,
    v_rank_lower,
    valid_profile,
)

PRIME_LO, PRIME_HI = 1 << 15, 1 << 16


@lru_cache(maxsize=1)
def challenge_primes() -> tuple:
    return tuple(primes_between(PRIME_LO, PRIME_HI))


def _pivot_primes():
    q = (1 << 31) - 1
    while True:
        if is_prime(q):
            yield q
        q -= 2


def block_structure(B_rat: Matrix, tries: int = 16):
    """Symmetric pivot order found modulo large primes, usable over Q."""
    gen = _pivot_primes()
    for _ in range(tries):
        try:
            return symmetric_pivot_order(B_rat.with_p(next(gen)))
        except (SingularMatrix, ZeroDivisionError, ValueError):
            continue
    raise SingularMatrix("no pivot order found")


def flatten_blocks(D: BlockDiagonal) -> list:
    return [Fraction(x) for b in D.blocks for x in b]


def _reduce(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


def apply_blocks_left(z, blocks, p) -> list:
    """zᵀ·Δ for Δ given as reduced blocks."""
    out, k = [], 0
    for b in blocks:
        if len(b) == 1:
            out.append(z[k] * b[0] % p)
            k += 1
        else:
            a, o, c = b
            out += [(z[k] * a + z[k + 1] * o) % p, (z[k] * o + z[k + 1] * c) % p]
            k += 2
    return out


def _block_ok_mod(blocks, q: int) -> bool:
    for b in blocks:
        if any(x.denominator % q == 0 for x in b):
            return False
        red = [_reduce(x, q) for x in b]
        det = red[0] if len(b) == 1 else (red[0] * red[2] - red[1] * red[1]) % q
        if det == 0:
            return False
    return True


# ---------------------------------------------------------------- prover


def signature_prover(inst: Instance, cfg: Config):
    A = inst.A
    I = pluq_crp(A).pivot_columns()
    r = len(I)
    yield commit(idx=I)
    while True:
        msg = yield expect(TAG_PRIME, idx=1)
        q1 = msg.idx[0]
        Aq = A.with_p(q1)
        if pluq_crp(Aq).pivot_columns() == I:
            break
        yield Message(TAG_BADPRIME)
    yield commit()
    yield from p_rank_lower(Aq, I)
    yield from p_crp_steps(Aq, I)
    yield from p_crp_steps(Aq.T, I)
    if r == 0:
        return
    B_I = A.submatrix(I, I)
    P, sizes = block_structure(B_I)
    B = conjugate_by_perm(B_I, P, transpose_first=True)
    Delta, _ = symmetric_block_ldlt(B, sizes)
    yield commit(idx=list(P.images) + sizes, rats=flatten_blocks(Delta))
    while True:
        msg = yield expect(TAG_PRIME, idx=1)
        q2 = msg.idx[0]
        try:
            _, Lq = symmetric_block_ldlt(B.with_p(q2), sizes)
            break
        except (PivotFailure, ZeroDivisionError, ValueError):
            yield Message(TAG_BADPRIME)
    yield commit()
    yield from p_ldup_loop(Lq.T, Lq, q2)


# ---------------------------------------------------------------- verifier


def _choose_prime(ctx: VerifierCtx, cfg: Config, admissible=lambda q: True, max_draws: int = 4096):
    """Offer primes until the prover accepts one; returns it.

    Rejection sampling keeps the draw uniform over admissible, not yet declined primes.
    """
    primes = challenge_primes()
    declined = set()
    for _ in range(cfg.max_prime_attempts):
        for _ in range(max_draws):
            q = ctx.choice(primes)
            if q not in declined and admissible(q):
                break
        else:
            reject_if(True, "no admissible prime found")
        yield Message(TAG_PRIME, idx=[q])
        msg = yield Expect((TAG_COMMIT, TAG_BADPRIME))
        if msg.tag == TAG_COMMIT:
            return q
        declined.add(q)
    reject_if(True, "too many primes declined")


def signature_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A = inst.A
    n = A.n
    reject_if(A.m != n or any(A.rows[i][j] != A.rows[j][i] for i in range(n) for j in range(i)), "matrix is not symmetric")
    msg = yield expect(TAG_COMMIT, idx=None)
    I = list(msg.idx)
    r = len(I)
    reject_if(r > n or not valid_profile(I, n), "invalid profile")
    q1 = yield from _choose_prime(ctx, cfg)
    Aq = A.with_p(q1)
    sub = VerifierCtx(q1, ctx.coins, ctx.stats, WHOLE)
    yield from v_rank_lower(sub, Aq, I)
    yield from v_crp_steps(sub, Aq, I)
    yield from v_crp_steps(sub, Aq.T, I)
    if r == 0:
        return (0, 0, n)

    msg = yield expect(TAG_COMMIT, idx=None, rats=None)
    P = check_permutation(msg.idx[:r], r)
    sizes = list(msg.idx[r:])
    reject_if(any(s not in (1, 2) for s in sizes) or sum(sizes) != r, "invalid block sizes")
    reject_if(len(msg.rats) != sum(1 if s == 1 else 3 for s in sizes), "block entries do not match sizes")
    it = iter(msg.rats)
    blocks = [tuple(next(it) for _ in range(1 if s == 1 else 3)) for s in sizes]
    for b in blocks:
        det = b[0] if len(b) == 1 else b[0] * b[2] - b[1] * b[1]
        reject_if(det == 0, "singular diagonal block")
    Delta = BlockDiagonal(blocks)

    q2 = yield from _choose_prime(ctx, cfg, lambda q: _block_ok_mod(blocks, q))
    Aq = A.with_p(q2)
    sub = VerifierCtx(q2, ctx.coins, ctx.stats, WHOLE)
    red = [tuple(_reduce(x, q2) for x in b) for b in blocks]
    phi, psi, lam, x, y, z = yield from v_ldup_loop(sub, r, q2)
    u = [0] * n
    for i, val in zip(I, P.apply(lam)):
        u[i] = val
    full = sub.vm(u, Aq)
    lamB = P.apply_t([full[i] for i in I])
    zD = apply_blocks_left(z, red, q2)
    reject_if(dot(zD, x, q2) != dot(lamB, phi, q2), "zᵀΔx differs from λᵀBφ")
    reject_if(dot(zD, y, q2) != dot(lamB, psi, q2), "zᵀΔy differs from λᵀBψ")
    pos, neg = Delta.inertia()
    return (pos, neg, n - r)
