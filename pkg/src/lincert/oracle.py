"""Slow brute-force ground truth. Shares no pivoting code with ``linalg``."""

from __future__ import annotations

import sympy

from .linalg import Matrix


def _full_pivot_rank(rows, p) -> int:
    W = [list(r) for r in rows]
    m = len(W)
    n = len(W[0]) if W else 0
    r = 0
    while r < min(m, n):
        piv = None
        for i in range(r, m):
            for j in range(r, n):
                if W[i][j] % p:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        W[r], W[i] = W[i], W[r]
        for row in W:
            row[r], row[j] = row[j], row[r]
        inv = pow(W[r][r], -1, p)
        for i in range(r + 1, m):
            f = W[i][r] * inv % p
            if f:
                W[i] = [(a - f * b) % p for a, b in zip(W[i], W[r])]
        r += 1
    return r


def oracle_rank(A: Matrix) -> int:
    return _full_pivot_rank(A.rows, A.p)


def oracle_crp(A: Matrix) -> list:
    """0-based column rank profile by greedy prefix rank."""
    cols, r = [], 0
    for j in range(A.n):
        sub = [[row[c] for c in cols + [j]] for row in A.rows]
        if _full_pivot_rank(sub, A.p) > r:
            cols.append(j)
            r += 1
    return cols


def oracle_rrp(A: Matrix) -> list:
    return oracle_crp(A.T)


def oracle_rpm(A: Matrix) -> Matrix:
    m, n, p = A.m, A.n, A.p
    lr = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            lr[i][j] = _full_pivot_rank([row[:j] for row in A.rows[:i]], p)
    R = Matrix.zeros(m, n, p)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            R.rows[i - 1][j - 1] = lr[i][j] - lr[i - 1][j] - lr[i][j - 1] + lr[i - 1][j - 1]
    return R


def oracle_det(A: Matrix) -> int:
    """Fraction-free Bareiss elimination over the integers, then reduce mod p."""
    n = A.n
    if n == 0:
        return 1 % A.p
    M = [list(r) for r in A.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] % A.p


def oracle_grp(A: Matrix) -> bool:
    """First r leading principal minors are nonzero."""
    r = oracle_rank(A)
    return all(oracle_det(A.submatrix(range(k), range(k))) != 0 for k in range(1, r + 1))


def oracle_signature(A) -> tuple:
    """(n_plus, n_minus, n_zero) by Sturm counting on the characteristic polynomial."""
    rows = A.rows if isinstance(A, Matrix) else A
    n = len(rows)
    if n == 0:
        return (0, 0, 0)
    M = sympy.Matrix(rows)
    if M != M.T:
        raise ValueError("matrix is not symmetric")
    x = sympy.Symbol("x")
    cp = sympy.Poly(M.charpoly(x).as_expr(), x)
    zero = 0
    while cp.eval(0) == 0:
        cp = sympy.Poly(sympy.quo(cp.as_expr(), x), x)
        zero += 1
    # count_roots ignores multiplicity, so count per square-free factor
    pos = sum(mult * f.count_roots(0, None) for f, mult in cp.sqf_list()[1])
    return (pos, n - zero - pos, zero)
