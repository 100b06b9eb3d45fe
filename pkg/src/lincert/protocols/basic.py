"""Matrix product check, rank bounds and triangular equivalence."""

from __future__ import annotations

from ..codec import TAG_CHALLENGE, TAG_COMMIT, TAG_COORD_CHAL, TAG_COORD_RESP, TAG_POLY, TAG_RESPONSE, Message
from ..errors import ProverAbort, SecurityLevelTooLow
from ..linalg import Matrix, is_lower_tri, is_upper_tri, pluq_crp, solve, solve_matrix
from ..transcript import VerifierCtx, expect
from .common import Config, Instance, commit, dot, p_rank_lower, reject_if, v_rank_lower, valid_profile

# ---------------------------------------------------------------- product


def freivalds_prover(inst: Instance, cfg: Config):
    C = inst.A @ inst.B
    yield commit(elems=C.flat())


def freivalds_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A, B = inst.A, inst.B
    m, n = A.m, B.n
    msg = yield expect(TAG_COMMIT, elems=m * n, modulus=A.p)
    C = Matrix.from_flat(m, n, msg.elems, A.p)
    v = ctx.sample_vec(n)
    reject_if(ctx.mv(A, ctx.mv(B, v)) != ctx.mv(C, v), "product check failed")
    return C


# ---------------------------------------------------------------- rank upper bound


def rank_upper_prover(inst: Instance, cfg: Config):
    A, R = inst.A, inst.claim
    msg = yield expect(TAG_CHALLENGE, elems=A.m)
    gamma = solve(A, msg.elems)
    if gamma is None or sum(1 for g in gamma if g) > R:
        raise ProverAbort("no sparse enough preimage")
    yield Message(TAG_RESPONSE, gamma)


def rank_upper_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A, R = inst.A, inst.claim
    v = ctx.sample_vec(A.n)
    w = ctx.mv(A, v)
    yield Message(TAG_CHALLENGE, w)
    msg = yield expect(TAG_RESPONSE, elems=A.n, modulus=A.p)
    gamma = list(msg.elems)
    # weight at most R keeps completeness when the true rank is below R
    reject_if(sum(1 for g in gamma if g) > R, "preimage has more than R nonzero entries")
    zero_cols = {j for j in range(A.n) if all(row[j] == 0 for row in A.rows)}
    reject_if(any(gamma[j] for j in zero_cols), "preimage is nonzero on a zero column")
    reject_if(ctx.mv(A, gamma) != w, "preimage does not map to the challenge")
    return R


# ---------------------------------------------------------------- rank lower bound


def rank_lower_prover(inst: Instance, cfg: Config):
    J = list(inst.claim) if inst.claim is not None else pluq_crp(inst.A).pivot_columns()
    yield commit(idx=J)
    yield from p_rank_lower(inst.A, J)


def rank_lower_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A = inst.A
    msg = yield expect(TAG_COMMIT, elems=0, idx=None)
    J = list(msg.idx)
    reject_if(len(J) > min(A.m, A.n) or not valid_profile(J, A.n), "invalid column index list")
    yield from v_rank_lower(ctx, A, J)
    return len(J)


# ---------------------------------------------------------------- triangular equivalence


def _side(inst: Instance) -> str:
    return inst.claim if inst.claim in ("lower", "upper") else "lower"


def _transform(A: Matrix, B: Matrix, side: str) -> Matrix:
    T = solve_matrix(A, B)
    if T is None:
        raise ProverAbort("B is not in the column space of A")
    if not (is_lower_tri(T) if side == "lower" else is_upper_tri(T)):
        raise ProverAbort(f"transform is not {side} triangular")
    return T


def tri_equiv_prover(inst: Instance, cfg: Config, T: Matrix | None = None):
    side = _side(inst)
    n, p = inst.A.n, inst.p
    if T is None:
        T = _transform(inst.A, inst.B, side)
    order = range(n) if side == "lower" else range(n - 1, -1, -1)
    x = [0] * n
    for j in order:
        msg = yield expect(TAG_COORD_CHAL, elems=1)
        x[j] = msg.elems[0]
        ks = range(j + 1) if side == "lower" else range(j, n)
        yield Message(TAG_COORD_RESP, [sum(T.rows[j][k] * x[k] for k in ks) % p])


def tri_equiv_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A, B, p = inst.A, inst.B, inst.p
    n = A.n
    order = range(n) if _side(inst) == "lower" else range(n - 1, -1, -1)
    x, y = [0] * n, [0] * n
    for j in order:
        x[j] = ctx.sample()
        yield Message(TAG_COORD_CHAL, [x[j]])
        msg = yield expect(TAG_COORD_RESP, elems=1, modulus=p)
        y[j] = msg.elems[0]
    reject_if(ctx.mv(A, y) != ctx.mv(B, x), "A·y differs from B·x")
    return True


# ---------------------------------------------------------------- constant-round variant


def laurent_coeffs_lower(T: Matrix, d, p) -> list:
    """Coefficients of Σ (T·Diag(d))_{ij} X^(i-j) for lower triangular T, exponents 0..n-1."""
    n = T.n
    g = [0] * n
    for i in range(n):
        row = T.rows[i]
        for j in range(i + 1):
            if row[j]:
                g[i - j] += row[j] * d[j]
    return [c % p for c in g]


def horner(coeffs, lam, p) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * lam + c) % p
    return acc


def powers(lam: int, k: int, p: int) -> list:
    out, acc = [], 1
    for _ in range(k):
        out.append(acc)
        acc = acc * lam % p
    return out


def require_sample_size(cfg: Config, p: int, minimum: int, what: str) -> None:
    size = cfg.sample_set.size(p) - (1 if cfg.sample_set.kind == "field" else 0)
    if size < max(minimum, 2):
        raise SecurityLevelTooLow(f"{what}: nonzero sample set of size {size} needs at least {max(minimum, 2)}")


def tri_equiv_const_prover(inst: Instance, cfg: Config, T: Matrix | None = None, g_hook=None):
    A, p, n = inst.A, inst.p, inst.A.n
    if T is None:
        T = _transform(A, inst.B, "lower")
    yield commit()
    msg = yield expect(TAG_CHALLENGE, elems=n)
    d = list(msg.elems)
    g = laurent_coeffs_lower(T, d, p)
    if g_hook:
        g = g_hook(g)
    yield Message(TAG_POLY, g)
    msg = yield expect(TAG_COORD_CHAL, elems=1)
    lam_inv = pow(msg.elems[0], -1, p)
    x = [a * b % p for a, b in zip(d, powers(lam_inv, n, p))]
    yield Message(TAG_RESPONSE, T.matvec(x))


def tri_equiv_const_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    require_sample_size(cfg, inst.p, 2 * (inst.A.n - 1) + 1, "constant-round triangular equivalence")
    return _tri_equiv_const_verifier(inst, ctx)


def _tri_equiv_const_verifier(inst: Instance, ctx: VerifierCtx):
    A, B, p = inst.A, inst.B, inst.p
    n = A.n
    yield expect(TAG_COMMIT)
    d = ctx.sample_vec(n, nonzero=True)
    yield Message(TAG_CHALLENGE, d)
    msg = yield expect(TAG_POLY, elems=n, modulus=p)
    g = list(msg.elems)
    lam = ctx.sample(nonzero=True)
    yield Message(TAG_COORD_CHAL, [lam])
    msg = yield expect(TAG_RESPONSE, elems=n, modulus=p)
    y = list(msg.elems)
    x = [a * b % p for a, b in zip(d, powers(pow(lam, -1, p), n, p))]
    reject_if(ctx.mv(A, y) != ctx.mv(B, x), "A·y differs from B·D·(λ^-j)")
    reject_if(horner(g, lam, p) != dot(powers(lam, n, p), y, p), "polynomial evaluation mismatch")
    return True
