"""Instances, configuration, and the sub-exchanges several certificates reuse.

Verifier-side helpers are named ``v_*`` and prover-side helpers ``p_*``; both
are generators meant for ``yield from``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from ..codec import TAG_COMMIT, TAG_CHALLENGE, TAG_COORD_CHAL, TAG_COORD_RESP, TAG_RESPONSE, Message
from ..errors import ProverAbort, Reject
from ..field import WHOLE, SampleSet
from ..linalg import Matrix, Permutation, solve_matrix
from ..transcript import VerifierCtx, expect


@dataclass
class Instance:
    """Public input. ``A`` and ``B`` share the modulus ``p`` (``None`` for integer input)."""

    A: Matrix
    B: Matrix | None = None
    claim: Any = None

    @property
    def p(self):
        return self.A.p

    def digest(self, pid: int) -> bytes:
        def mat(M):
            return None if M is None else [M.m, M.n, [str(x) for x in M.flat()]]

        blob = json.dumps(
            {"pid": pid, "p": self.p, "A": mat(self.A), "B": mat(self.B), "claim": _jsonable(self.claim)},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(blob.encode()).digest()


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass
class Config:
    sample_set: SampleSet = WHOLE
    grp_precheck: bool = False
    max_prime_attempts: int = 8


def reject_if(cond: bool, reason: str) -> None:
    if cond:
        raise Reject(reason)


def valid_profile(J: Sequence[int], n: int) -> bool:
    return all(0 <= j < n for j in J) and all(a < b for a, b in zip(J, J[1:]))


# ---------------------------------------------------------------- rank lower bound


def v_rank_lower(ctx: VerifierCtx, A: Matrix, J: Sequence[int]):
    """After J is known: challenge ν = Aα with α supported on J, expect β = α_J."""
    p = A.p
    r = len(J)
    alpha_J = ctx.sample_vec(r, nonzero=True, p=p)
    alpha = [0] * A.n
    for j, a in zip(J, alpha_J):
        alpha[j] = a
    nu = ctx.mv(A, alpha)
    yield Message(TAG_CHALLENGE, nu)
    msg = yield expect(TAG_RESPONSE, elems=r, modulus=p)
    reject_if(list(msg.elems) != alpha_J, "rank lower bound: returned preimage differs")


def p_rank_lower(A: Matrix, J: Sequence[int]):
    msg = yield expect(TAG_CHALLENGE, elems=A.m)
    X = solve_matrix(A.submatrix(range(A.m), J), Matrix([[x] for x in msg.elems], A.p, 1))
    if X is None:
        raise ProverAbort("no preimage on the committed columns")
    yield Message(TAG_RESPONSE, [row[0] for row in X.rows])


# ---------------------------------------------------------------- column profile steps


def w_boundaries(J: Sequence[int], n: int) -> list:
    """Column j of W covers rows i < bound[j] (the next profile index, or n)."""
    return [J[j + 1] if j + 1 < len(J) else n for j in range(len(J))]


def apply_vw(v: Sequence[int], J: Sequence[int], x: Sequence[int], p: int) -> list:
    """Diag(v)·W·x."""
    n = len(v)
    bounds = w_boundaries(J, n)
    add = [0] * (n + 1)
    for j, xj in enumerate(x):
        add[bounds[j]] += xj  # x_j contributes to every i < bounds[j]
    out = [0] * n
    acc = 0
    for i in range(n - 1, -1, -1):
        acc += add[i + 1]
        out[i] = v[i] * acc % p
    return out


def p_gamma(A: Matrix, J: Sequence[int], v: Sequence[int]) -> Matrix:
    """Upper triangular Γ with A_{*,J}·Γ = A·Diag(v)·W."""
    p, m, r = A.p, A.m, len(J)
    bounds = w_boundaries(J, A.n)
    AV = [[0] * r for _ in range(m)]
    run = [0] * m
    i0 = 0
    for j in range(r):
        for i in range(i0, bounds[j]):
            if v[i]:
                for row in range(m):
                    run[row] += v[i] * A.rows[row][i]
        i0 = bounds[j]
        for row in range(m):
            AV[row][j] = run[row] % p
    G = solve_matrix(A.submatrix(range(m), J), Matrix._raw(AV, p, r)) if r else Matrix.zeros(0, 0, p)
    if G is None:
        raise ProverAbort("committed profile does not span the prefix columns")
    if any(G.rows[i][j] for i in range(r) for j in range(i)):
        raise ProverAbort("committed profile is not minimal")
    return G


def v_crp_steps(ctx: VerifierCtx, A: Matrix, J: Sequence[int]):
    """Challenge v, run the reverse-order triangular exchange, check A·z = 0."""
    p, n, r = A.p, A.n, len(J)
    v = ctx.sample_vec(n, p=p)
    yield Message(TAG_CHALLENGE, v)
    x = [0] * r
    y = [0] * r
    for j in range(r - 1, -1, -1):
        x[j] = ctx.sample(p=p)
        yield Message(TAG_COORD_CHAL, [x[j]])
        msg = yield expect(TAG_COORD_RESP, elems=1, modulus=p)
        y[j] = msg.elems[0]
    z = apply_vw(v, J, x, p)
    # Columns left of the first profile index must vanish; a private nonzero
    # multiplier keeps a nonzero one from hiding behind the first W column.
    x0 = ctx.sample(nonzero=True, p=p)
    first = J[0] if r else n
    for i in range(first):
        z[i] = (z[i] + x0 * v[i]) % p
    for j, c in enumerate(J):
        z[c] = (z[c] - y[j]) % p
    reject_if(any(ctx.mv(A, z)), "column profile: A·z is nonzero")


def p_crp_steps(A: Matrix, J: Sequence[int], gamma_hook: Callable | None = None):
    p, r = A.p, len(J)
    msg = yield expect(TAG_CHALLENGE, elems=A.n)
    G = p_gamma(A, J, msg.elems)
    if gamma_hook:
        G = gamma_hook(G)
    x = [0] * r
    for j in range(r - 1, -1, -1):
        m = yield expect(TAG_COORD_CHAL, elems=1)
        x[j] = m.elems[0]
        yj = sum(G.rows[j][k] * x[k] for k in range(j, r)) % p
        yield Message(TAG_COORD_RESP, [yj])


# ---------------------------------------------------------------- LDUP-style exchange


def v_ldup_loop(ctx: VerifierCtx, n: int, p: int):
    """Stages n-1..1 of the reduced-vector exchange.

    Returns (φ, ψ, λ, x, y, z) with x = φ + [x̄; 0], y = ψ + [ȳ; 0], z = λ + [z̄; 0].
    """
    phi, psi, lam = [0] * n, [0] * n, [0] * n
    xb, yb, zb = [0] * n, [0] * n, [0] * n
    for i in range(n - 1, 0, -1):
        phi[i], psi[i] = ctx.sample(p=p), ctx.sample(p=p)
        yield Message(TAG_COORD_CHAL, [phi[i], psi[i]])
        msg = yield expect(TAG_COORD_RESP, elems=2, modulus=p)
        xb[i - 1], yb[i - 1] = msg.elems
        lam[i] = ctx.sample(p=p)
        yield Message(TAG_COORD_CHAL, [lam[i]])
        msg = yield expect(TAG_COORD_RESP, elems=1, modulus=p)
        zb[i - 1] = msg.elems[0]
    if n:
        phi[0], psi[0], lam[0] = ctx.sample(p=p), ctx.sample(p=p), ctx.sample(p=p)
    x = [(a + b) % p for a, b in zip(phi, xb)]
    y = [(a + b) % p for a, b in zip(psi, yb)]
    z = [(a + b) % p for a, b in zip(lam, zb)]
    return phi, psi, lam, x, y, z


def p_ldup_loop(U1: Matrix, L: Matrix, p: int):
    """Prover side: x̄ from the strict upper part of U1, z̄ from the strict lower part of L."""
    n = U1.n
    phi, psi, lam = [0] * n, [0] * n, [0] * n
    for i in range(n - 1, 0, -1):
        msg = yield expect(TAG_COORD_CHAL, elems=2)
        phi[i], psi[i] = msg.elems
        row = U1.rows[i - 1]
        xb = sum(row[j] * phi[j] for j in range(i, n)) % p
        yb = sum(row[j] * psi[j] for j in range(i, n)) % p
        yield Message(TAG_COORD_RESP, [xb, yb])
        msg = yield expect(TAG_COORD_CHAL, elems=1)
        lam[i] = msg.elems[0]
        zb = sum(lam[l] * L.rows[l][i - 1] for l in range(i, n)) % p
        yield Message(TAG_COORD_RESP, [zb])


def dot(u, v, p):
    return sum(a * b for a, b in zip(u, v)) % p


def check_permutation(images: Sequence[int], n: int, what: str = "permutation") -> Permutation:
    reject_if(not Permutation.is_valid(images, n), f"{what} is not a permutation of size {n}")
    return Permutation(images)


def commit(elems=(), idx=(), rats=()) -> Message:
    return Message(TAG_COMMIT, elems, idx, rats)
