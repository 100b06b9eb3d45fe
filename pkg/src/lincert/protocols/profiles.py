"""Column/row rank profiles and the rank profile matrix."""

from __future__ import annotations

from ..codec import TAG_CHALLENGE, TAG_COMMIT, TAG_COORD_CHAL, TAG_RESPONSE, Message
from ..errors import ProverAbort
from ..linalg import (
    Matrix,
    Permutation,
    conjugate_by_perm,
    is_lower_tri,
    is_row_echelon,
    is_upper_tri,
    leading_column,
    pluq_crp,
    pluq_rpm,
    solve_matrix,
)
from ..transcript import VerifierCtx, expect
from .basic import horner, powers, require_sample_size
from .common import (
    Config,
    Instance,
    apply_vw,
    check_permutation,
    commit,
    p_crp_steps,
    p_gamma,
    p_rank_lower,
    reject_if,
    v_crp_steps,
    v_rank_lower,
    valid_profile,
)
from .lu import p_rpm_invertible, v_rpm_invertible

# ---------------------------------------------------------------- non-interactive factor checks


def _pluq_message(f) -> Message:
    return commit(elems=f.L.flat() + f.U.flat(), idx=[f.r] + list(f.P.images) + list(f.Q.images))


def _read_pluq(msg: Message, A: Matrix):
    m, n, p = A.m, A.n, A.p
    r = msg.idx[0]
    reject_if(r > min(m, n), "rank exceeds the matrix dimensions")
    reject_if(len(msg.elems) != m * r + r * n, "factor sizes do not match the rank")
    P = check_permutation(msg.idx[1 : 1 + m], m, "row permutation")
    Q = check_permutation(msg.idx[1 + m :], n, "column permutation")
    L = Matrix.from_flat(m, r, msg.elems[: m * r], p)
    U = Matrix.from_flat(r, n, msg.elems[m * r :], p)
    return r, P, L, U, Q


def _freivalds_pluq(ctx: VerifierCtx, A: Matrix, P, L, U, Q) -> None:
    v = ctx.sample_vec(A.n)
    lhs = P.apply(L.matvec(U.matvec(Q.apply(v)))) if L.n else [0] * A.m
    reject_if(lhs != ctx.mv(A, v), "A differs from P·L·U·Q")


def crp_ni_prover(inst: Instance, cfg: Config):
    yield _pluq_message(pluq_crp(inst.A))


def crp_ni_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A = inst.A
    msg = yield expect(TAG_COMMIT, elems=None, idx=A.m + A.n + 1, modulus=A.p)
    r, P, L, U, Q = _read_pluq(msg, A)
    reject_if(not (is_lower_tri(L) and all(L.rows[k][k] == 1 for k in range(r))), "L is not unit lower trapezoidal")
    reject_if(not all(U.rows[k][k] != 0 for k in range(r)), "U has a zero pivot")
    UQ = Matrix._raw([Q.apply_t(row) for row in U.rows], A.p, A.n)  # (U·Q) rows
    q = Q.row_targets()
    reject_if(not is_row_echelon(UQ), "U·Q is not in row echelon form")
    reject_if(any(leading_column(UQ.rows[k]) != q[k] for k in range(r)), "pivots are not the leading entries")
    _freivalds_pluq(ctx, A, P, L, U, Q)
    return q[:r]


def rpm_ni_prover(inst: Instance, cfg: Config):
    yield _pluq_message(pluq_rpm(inst.A))


def rpm_ni_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A = inst.A
    m, n, p = A.m, A.n, A.p
    msg = yield expect(TAG_COMMIT, elems=None, idx=m + n + 1, modulus=p)
    r, P, L, U, Q = _read_pluq(msg, A)
    reject_if(not all(L.rows[k][k] != 0 and U.rows[k][k] != 0 for k in range(r)), "singular triangular factor")
    Lpad = Matrix._raw([row + [0] * (m - r) for row in L.rows], p, m)
    Upad = Matrix._raw(U.rows + [[0] * n for _ in range(n - r)], p, n)
    reject_if(not is_lower_tri(conjugate_by_perm(Lpad, P)), "P·L·Pᵀ is not lower triangular")
    reject_if(not is_upper_tri(conjugate_by_perm(Upad, Q, transpose_first=True)), "Qᵀ·U·Q is not upper triangular")
    _freivalds_pluq(ctx, A, P, L, U, Q)
    R = Matrix.zeros(m, n, p)
    q = Q.row_targets()
    for k in range(r):
        R.rows[P.images[k]][q[k]] = 1
    return R


# ---------------------------------------------------------------- interactive column rank profile


def crp_interactive_prover(inst: Instance, cfg: Config):
    A = inst.A
    J = pluq_crp(A).pivot_columns()
    yield commit(idx=J)
    yield from p_rank_lower(A, J)
    yield from p_crp_steps(A, J)


def v_commit_profile(A: Matrix):
    msg = yield expect(TAG_COMMIT, elems=0, idx=None)
    J = list(msg.idx)
    reject_if(len(J) > min(A.m, A.n) or not valid_profile(J, A.n), "invalid profile")
    return J


def crp_interactive_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A = inst.A
    J = yield from v_commit_profile(A)
    yield from v_rank_lower(ctx, A, J)
    yield from v_crp_steps(ctx, A, J)
    return J


# ---------------------------------------------------------------- constant-round column rank profile


def laurent_coeffs_upper(G: Matrix, d, p) -> list:
    """Coefficients of Σ (Γ·Diag(d))_{ij} X^(j-i) for upper triangular Γ."""
    r = G.n
    g = [0] * r
    for i in range(r):
        row = G.rows[i]
        for j in range(i, r):
            if row[j]:
                g[j - i] += row[j] * d[j]
    return [c % p for c in g]


def crp_const_prover(inst: Instance, cfg: Config, J=None, g_hook=None):
    A, p = inst.A, inst.p
    m, n = A.m, A.n
    J = pluq_crp(A).pivot_columns() if J is None else list(J)
    r = len(J)
    yield commit(idx=J)
    msg = yield expect(TAG_CHALLENGE, elems=m + n + r)
    nu, v, d = msg.elems[:m], msg.elems[m : m + n], msg.elems[m + n :]
    X = solve_matrix(A.submatrix(range(m), J), Matrix([[x] for x in nu], p, 1)) if r else Matrix.zeros(0, 1, p)
    if X is None:
        raise ProverAbort("no preimage on the committed columns")
    G = p_gamma(A, J, v) if r else Matrix.zeros(0, 0, p)
    g = laurent_coeffs_upper(G, d, p)
    if g_hook:
        g = g_hook(g)
    yield Message(TAG_RESPONSE, [row[0] for row in X.rows] + g)
    msg = yield expect(TAG_COORD_CHAL, elems=1)
    x = [a * b % p for a, b in zip(d, powers(msg.elems[0], r, p))]
    yield Message(TAG_RESPONSE, G.matvec(x) if r else [])


def crp_const_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A = inst.A
    require_sample_size(cfg, A.p, 2 * min(A.m, A.n) - 1, "constant-round column rank profile")
    return _crp_const_verifier(inst, ctx)


def _crp_const_verifier(inst: Instance, ctx: VerifierCtx):
    A, p = inst.A, inst.p
    m, n = A.m, A.n
    J = yield from v_commit_profile(A)
    r = len(J)
    alpha_J = ctx.sample_vec(r, nonzero=True)
    alpha = [0] * n
    for j, a in zip(J, alpha_J):
        alpha[j] = a
    nu = ctx.mv(A, alpha)
    v = ctx.sample_vec(n)
    d = ctx.sample_vec(r, nonzero=True)
    yield Message(TAG_CHALLENGE, nu + v + d)
    msg = yield expect(TAG_RESPONSE, elems=2 * r, modulus=p)
    reject_if(list(msg.elems[:r]) != alpha_J, "rank lower bound: returned preimage differs")
    g = list(msg.elems[r:])
    lam = ctx.sample(nonzero=True)
    yield Message(TAG_COORD_CHAL, [lam])
    msg = yield expect(TAG_RESPONSE, elems=r, modulus=p)
    y = list(msg.elems)
    x = [a * b % p for a, b in zip(d, powers(lam, r, p))]
    z = apply_vw(v, J, x, p)
    x0 = ctx.sample(nonzero=True)
    for i in range(J[0] if r else n):
        z[i] = (z[i] + x0 * v[i]) % p
    for j, c in enumerate(J):
        z[c] = (z[c] - y[j]) % p
    reject_if(any(ctx.mv(A, z)), "column profile: A·z is nonzero")
    lam_inv_pows = powers(pow(lam, -1, p), r, p)
    reject_if(horner(g, lam, p) != sum(a * b for a, b in zip(lam_inv_pows, y)) % p, "polynomial evaluation mismatch")
    return J


# ---------------------------------------------------------------- rank profile matrix, general case


def _orient(A: Matrix, I, J):
    """The full column-profile run goes on the orientation with fewer rows."""
    if A.m <= A.n:
        return (A, J), (A.T, I)
    return (A.T, I), (A, J)


def rpm_full_prover(inst: Instance, cfg: Config):
    A = inst.A
    J = pluq_crp(A).pivot_columns()
    I = pluq_crp(A.T).pivot_columns()
    (X, px), (Y, py) = _orient(A, I, J)
    yield commit(idx=px)
    yield from p_rank_lower(X, px)
    yield from p_crp_steps(X, px)
    yield commit(idx=py)
    yield from p_crp_steps(Y, py)
    if I:
        yield from p_rpm_invertible(A.submatrix(I, J))


def rpm_full_verifier(inst: Instance, ctx: VerifierCtx, cfg: Config):
    A, p = inst.A, inst.p
    m, n = A.m, A.n
    X, Y = (A, A.T) if m <= n else (A.T, A)
    px = yield from v_commit_profile(X)
    yield from v_rank_lower(ctx, X, px)
    yield from v_crp_steps(ctx, X, px)
    py = yield from v_commit_profile(Y)
    reject_if(len(py) != len(px), "row and column profiles differ in length")
    yield from v_crp_steps(ctx, Y, py)
    I, J = (py, px) if m <= n else (px, py)
    r = len(I)
    R = Matrix.zeros(m, n, p)
    if r == 0:
        return R

    def lam_times_sub(lam):
        u = [0] * m
        for i, l in zip(I, lam):
            u[i] = l
        full = ctx.vm(u, A)
        return [full[j] for j in J]

    Pr = yield from v_rpm_invertible(ctx, r, p, lam_times_sub)
    for b, a in enumerate(Pr.images):
        R.rows[I[a]][J[b]] = 1
    return R
