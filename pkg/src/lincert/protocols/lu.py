"""Generic rank profile, LDUP, determinant and the rank profile matrix of an invertible matrix."""

from __future__ import annotations

from ..codec import TAG_COMMIT, TAG_COORD_CHAL, TAG_COORD_RESP, Message
from ..errors import PivotFailure, ProverAbort, SingularMatrix
from ..linalg import LdupFactors, Matrix, conjugate_by_perm, determinant, ldup, lu_nopivot
from ..transcript import VerifierCtx, expect
from .basic import rank_upper_prover, rank_upper_verifier
from .common import (
    Config,
    Instance,
    check_permutation,
    commit,
    dot,
    p_ldup_loop,
    p_rank_lower,
    reject_if,
    v_ldup_loop,
    v_rank_lower,
)

# ---------------------------------------------------------------- generic rank profile


def grp_prover(inst: Instance, cfg: Config, factors=None):
    A, p, n = inst.A, inst.p, inst.A.n
    if cfg.grp_precheck:
        yield from p_rank_lower(A, list(range(n)))
    try:
        L, U = factors if factors is not None else lu_nopivot(A)
    except PivotFailure:
        yield expect(TAG_COORD_CHAL, elems=2)
        raise ProverAbort("no LU factorization without pivoting")
    phi, psi, lam = [0] * n, [0] * n, [0] * n
    for i in range(n - 1, -1, -1):
        msg = yield expect(TAG_COORD_CHAL, elems=2)
        phi[i], psi[i] = msg.elems
        row = U.rows[i]
        x = sum(row[j] * phi[j] for j in range(i, n)) % p
        y = sum(row[j] * psi[j] for j in range(i, n)) % p
        yield Message(TAG_COORD_RESP, [x, y])
        msg = yield expect(TAG_COORD_CHAL, elems=1)
        lam[i] = msg.elems[0]
        yield Message(TAG_COORD_RESP, [sum(lam[l] * L.rows[l][i] for l in range(i, n)) % p])


def grp_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A, p, n = inst.A, inst.p, inst.A.n
    reject_if(A.m != A.n, "matrix is not square")
    if cfg.grp_precheck:
        yield from v_rank_lower(ctx, A, list(range(n)))
    phi, psi, lam, x, y, z = ([0] * n for _ in range(6))
    for i in range(n - 1, -1, -1):
        phi[i], psi[i] = ctx.sample(), ctx.sample()
        yield Message(TAG_COORD_CHAL, [phi[i], psi[i]])
        msg = yield expect(TAG_COORD_RESP, elems=2, modulus=p)
        x[i], y[i] = msg.elems
        lam[i] = ctx.sample()
        yield Message(TAG_COORD_CHAL, [lam[i]])
        msg = yield expect(TAG_COORD_RESP, elems=1, modulus=p)
        z[i] = msg.elems[0]
    lamA = ctx.vm(lam, A)
    reject_if(dot(z, x, p) != dot(lamA, phi, p), "zᵀx differs from λᵀAφ")
    reject_if(dot(z, y, p) != dot(lamA, psi, p), "zᵀy differs from λᵀAψ")
    return True


# ---------------------------------------------------------------- LDUP


def v_ldup_commit(n: int, p: int, extra_elems: int = 0):
    msg = yield expect(TAG_COMMIT, elems=n + extra_elems, idx=n, modulus=p)
    P = check_permutation(msg.idx, n)
    D = list(msg.elems[extra_elems:])
    reject_if(any(d == 0 for d in D), "zero on the committed diagonal")
    return P, D, list(msg.elems[:extra_elems])


def v_ldup_tail(ctx: VerifierCtx, n: int, p: int, lam_times_a, P, D):
    """Reduced exchange plus the final bilinear checks. Returns (φ, x)."""
    phi, psi, lam, x, y, z = yield from v_ldup_loop(ctx, n, p)
    zD = [a * b % p for a, b in zip(z, D)]
    lamA = lam_times_a(lam)
    reject_if(dot(zD, x, p) != dot(lamA, P.apply_t(phi), p), "zᵀDx differs from λᵀAPᵀφ")
    reject_if(dot(zD, y, p) != dot(lamA, P.apply_t(psi), p), "zᵀDy differs from λᵀAPᵀψ")
    return phi, x


def _factor(A: Matrix) -> LdupFactors:
    try:
        return ldup(A)
    except SingularMatrix:
        raise ProverAbort("matrix is singular")


def ldup_prover(inst: Instance, cfg: Config, factors: LdupFactors | None = None):
    f = factors or _factor(inst.A)
    yield commit(elems=f.D, idx=f.P.images)
    yield from p_ldup_loop(f.U1, f.L, inst.p)


def ldup_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A, p, n = inst.A, inst.p, inst.A.n
    reject_if(A.m != A.n, "matrix is not square")
    P, D, _ = yield from v_ldup_commit(n, p)
    yield from v_ldup_tail(ctx, n, p, lambda lam: ctx.vm(lam, A), P, D)
    return P, D


# ---------------------------------------------------------------- determinant


def determinant_prover(inst: Instance, cfg: Config):
    A, p, n = inst.A, inst.p, inst.A.n
    det = determinant(A)
    if det == 0:
        yield commit(elems=[0])
        yield from rank_upper_prover(Instance(A, claim=n - 1), cfg)
        return
    f = ldup(A)
    yield commit(elems=[det] + f.D, idx=f.P.images)
    yield from p_ldup_loop(f.U1, f.L, p)


def determinant_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A, p, n = inst.A, inst.p, inst.A.n
    reject_if(A.m != A.n, "matrix is not square")
    msg = yield expect(TAG_COMMIT, elems=None, idx=None, modulus=p)
    reject_if(not msg.elems, "missing determinant value")
    det = msg.elems[0]
    reject_if(inst.claim is not None and inst.claim % p != det, "committed determinant differs from the claim")
    if det == 0:
        reject_if(len(msg.elems) != 1 or msg.idx, "malformed singular commitment")
        yield from rank_upper_verifier(Instance(A, claim=n - 1), ctx, cfg)
        return 0
    reject_if(len(msg.elems) != n + 1 or len(msg.idx) != n, "malformed factor commitment")
    P = check_permutation(msg.idx, n)
    D = list(msg.elems[1:])
    reject_if(any(d == 0 for d in D), "zero on the committed diagonal")
    prod = P.sign() % p
    for d in D:
        prod = prod * d % p
    reject_if(prod != det, "Det(D)·sign(P) differs from the committed determinant")
    yield from v_ldup_tail(ctx, n, p, lambda lam: ctx.vm(lam, A), P, D)
    return det


# ---------------------------------------------------------------- rank profile matrix, invertible case


def p_rpm_invertible(A: Matrix, factors: LdupFactors | None = None, ubar_hook=None):
    p, n = A.p, A.n
    f = factors or _factor(A)
    yield commit(elems=f.D, idx=f.P.images)
    ubar = conjugate_by_perm(f.U1, f.P, transpose_first=True)
    if ubar_hook:
        ubar = ubar_hook(ubar)
    e = [0] * n
    for j in range(n):
        msg = yield expect(TAG_COORD_CHAL, elems=1)
        e[j] = msg.elems[0]
        # f_j depends only on e_1..e_j, which the upper shape of Ū guarantees
        yield Message(TAG_COORD_RESP, [sum(e[i] * ubar.rows[i][j] for i in range(j + 1)) % p])
    yield from p_ldup_loop(f.U1, f.L, p)


def v_rpm_invertible(ctx: VerifierCtx, n: int, p: int, lam_times_a):
    P, D, _ = yield from v_ldup_commit(n, p)
    e, fv = [0] * n, [0] * n
    for j in range(n):
        e[j] = ctx.sample(p=p)
        yield Message(TAG_COORD_CHAL, [e[j]])
        msg = yield expect(TAG_COORD_RESP, elems=1, modulus=p)
        fv[j] = msg.elems[0]
    phi, x = yield from v_ldup_tail(ctx, n, p, lam_times_a, P, D)
    reject_if(dot(e, P.apply_t(x), p) != dot(fv, P.apply_t(phi), p), "PᵀUP is not upper triangular")
    return P


def rpm_invertible_prover(inst: Instance, cfg: Config):
    yield from p_rpm_invertible(inst.A)


def rpm_invertible_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A = inst.A
    reject_if(A.m != A.n, "matrix is not square")
    P = yield from v_rpm_invertible(ctx, A.n, A.p, lambda lam: ctx.vm(lam, A))
    return P.matrix(A.p)
