"""Random instances on which the honest prover's claim is true."""

from __future__ import annotations

import random

from .linalg import Matrix, Permutation, rank
from .protocols.common import Instance


def rand_matrix(rng: random.Random, m: int, n: int, p: int, density: float = 1.0) -> Matrix:
    return Matrix._raw([[rng.randrange(p) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)], p, n)


def rand_rank(rng: random.Random, m: int, n: int, p: int, r: int | None = None) -> Matrix:
    """Random m×n matrix of rank at most r (exactly r with high probability)."""
    if r is None:
        r = rng.randint(0, min(m, n))
    if r == 0:
        return Matrix.zeros(m, n, p)
    X = rand_matrix(rng, m, r, p, density=rng.choice([1.0, 0.5]))
    Y = rand_matrix(rng, r, n, p, density=rng.choice([1.0, 0.5]))
    return X @ Y


def rand_unit_lower(rng, n, p) -> Matrix:
    return Matrix._raw([[rng.randrange(p) if j < i else int(i == j) for j in range(n)] for i in range(n)], p, n)


def rand_upper(rng, n, p, nonsingular=True) -> Matrix:
    rows = []
    for i in range(n):
        row = [0] * i + [rng.randrange(1, p) if nonsingular else rng.randrange(p)]
        row += [rng.randrange(p) for _ in range(n - i - 1)]
        rows.append(row)
    return Matrix._raw(rows, p, n)


def rand_perm(rng, n) -> Permutation:
    im = list(range(n))
    rng.shuffle(im)
    return Permutation(im)


def rand_nonsingular(rng, n, p) -> Matrix:
    """L·U·P with a random permutation, so rank profile matrices vary."""
    return rand_unit_lower(rng, n, p) @ rand_upper(rng, n, p) @ rand_perm(rng, n).matrix(p)


def rand_full_column_rank(rng, m, n, p) -> Matrix:
    while True:
        A = rand_matrix(rng, m, n, p)
        if rank(A) == n:
            return A


def rand_symmetric_int(rng, n, bound=5) -> Matrix:
    kind = rng.random()
    if kind < 0.3:
        r = rng.randint(0, n)
        X = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(r)]
        s = [rng.choice([-1, 1, 2]) for _ in range(r)]
        rows = [[sum(X[k][i] * s[k] * X[k][j] for k in range(r)) for j in range(n)] for i in range(n)]
    else:
        rows = [[0] * n for _ in range(n)]
        zero_diag = kind < 0.5
        for i in range(n):
            for j in range(i + 1):
                v = 0 if (i == j and zero_diag) else rng.randint(-bound, bound)
                rows[i][j] = rows[j][i] = v
    return Matrix(rows, None, n)


def honest_instance(name: str, rng: random.Random, p: int, max_dim: int = 16) -> Instance:
    d = lambda lo=1: rng.randint(lo, max_dim)  # noqa: E731
    if name == "freivalds":
        m, k, n = d(), d(), d()
        return Instance(rand_matrix(rng, m, k, p), rand_matrix(rng, k, n, p))
    if name in ("crp_ni", "rpm_ni", "crp_interactive", "rpm_full", "crp_const", "rank_lower"):
        return Instance(rand_rank(rng, d(), d(), p))
    if name == "rank_upper":
        A = rand_rank(rng, d(), d(), p)
        return Instance(A, claim=min(rank(A) + rng.choice([0, 0, 1]), min(A.m, A.n)))
    if name in ("tri_equiv", "tri_equiv_const"):
        n = d()
        m = rng.randint(n, max_dim)
        side = "lower" if name == "tri_equiv_const" else rng.choice(["lower", "upper"])
        A = rand_full_column_rank(rng, m, n, p)
        T = rand_upper(rng, n, p, nonsingular=False)
        T = T.T if side == "lower" else T
        return Instance(A, A @ T, claim=side)
    if name == "grp":
        n = d()
        return Instance(rand_unit_lower(rng, n, p) @ rand_upper(rng, n, p))
    if name in ("ldup", "rpm_invertible"):
        return Instance(rand_nonsingular(rng, d(), p))
    if name == "determinant":
        n = d()
        A = rand_nonsingular(rng, n, p) if rng.random() < 0.7 else rand_rank(rng, n, n, p, rng.randint(0, n - 1))
        return Instance(A)
    if name == "signature":
        return Instance(rand_symmetric_int(rng, d()))
    raise KeyError(name)
