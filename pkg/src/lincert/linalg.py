"""Dense exact matrices over F_p (entries are ints in [0, p)) or over Q
(entries are Fractions, ``p is None``), permutations, and the
rank-profile-revealing eliminations used by provers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotSymmetric,
    PivotFailure,
    SingularMatrix,
    ZeroEvaluationPoint,
)


def _inv(x, p):
    if p is None:
        if x == 0:
            raise ZeroDivisionError
        return 1 / Fraction(x)
    return pow(x, -1, p)


def _red(x, p):
    return x % p if p is not None else Fraction(x)


class Matrix:
    """Row-major dense matrix. Immutable by convention."""

    __slots__ = ("rows", "m", "n", "p")

    def __init__(self, rows: Sequence[Sequence], p: int | None, n: int | None = None):
        self.p = p
        self.rows = [[_red(x, p) for x in r] for r in rows]
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else (n or 0)
        if any(len(r) != self.n for r in self.rows):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def _raw(cls, rows, p, n):
        M = cls.__new__(cls)
        M.rows, M.p, M.m, M.n = rows, p, len(rows), n
        return M

    @classmethod
    def zeros(cls, m: int, n: int, p):
        z = 0 if p is not None else Fraction(0)
        return cls._raw([[z] * n for _ in range(m)], p, n)

    @classmethod
    def identity(cls, n: int, p):
        M = cls.zeros(n, n, p)
        for i in range(n):
            M.rows[i][i] = 1 if p is not None else Fraction(1)
        return M

    @classmethod
    def from_flat(cls, m: int, n: int, flat: Sequence, p):
        if len(flat) != m * n:
            raise DimensionMismatch("flat length does not match shape")
        return cls([flat[i * n : (i + 1) * n] for i in range(m)], p, n)

    @classmethod
    def diag(cls, d: Sequence, p):
        M = cls.zeros(len(d), len(d), p)
        for i, x in enumerate(d):
            M.rows[i][i] = _red(x, p)
        return M

    @property
    def shape(self):
        return (self.m, self.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.rows}, p={self.p})"

    def copy_rows(self):
        return [list(r) for r in self.rows]

    def flat(self):
        return [x for r in self.rows for x in r]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw([list(c) for c in zip(*self.rows)] if self.m else [], self.p, self.m)

    def with_p(self, p: int) -> "Matrix":
        """Reduce an integer or rational matrix modulo p."""
        out = []
        for r in self.rows:
            row = []
            for x in r:
                if isinstance(x, Fraction):
                    row.append(x.numerator * pow(x.denominator, -1, p) % p)
                else:
                    row.append(x % p)
            out.append(row)
        return Matrix._raw(out, p, self.n)

    def matvec(self, v: Sequence) -> list:
        if len(v) != self.n:
            raise DimensionMismatch(f"matvec: {self.n} columns vs vector of {len(v)}")
        p = self.p
        if p is None:
            return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows]
        return [sum(a * b for a, b in zip(r, v)) % p for r in self.rows]

    def vecmat(self, u: Sequence) -> list:
        if len(u) != self.m:
            raise DimensionMismatch(f"vecmat: {self.m} rows vs vector of {len(u)}")
        p = self.p
        acc = [0] * self.n if p is not None else [Fraction(0)] * self.n
        for c, r in zip(u, self.rows):
            if c:
                for j, a in enumerate(r):
                    acc[j] += c * a
        return [x % p for x in acc] if p is not None else acc

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.n != other.m:
            raise DimensionMismatch("matmul shapes")
        cols = list(zip(*other.rows)) if other.m else [()] * other.n
        p = self.p
        if p is None:
            rows = [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows]
        else:
            rows = [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.rows]
        return Matrix._raw(rows, p, other.n)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows], self.p, len(cols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)


def zero_vec(n, p):
    return [0] * n if p is not None else [Fraction(0)] * n


def dot(u, v, p):
    s = sum(a * b for a, b in zip(u, v))
    return s % p if p is not None else s


# ---------------------------------------------------------------- permutations


@dataclass(frozen=True)
class Permutation:
    """P[images[j], j] = 1: images[j] is the row holding column j's one."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))

    @classmethod
    def identity(cls, n: int):
        return cls(range(n))

    @classmethod
    def from_row_targets(cls, q: Sequence[int]):
        """Build P with P[l, q[l]] = 1."""
        images = [0] * len(q)
        for l, c in enumerate(q):
            images[c] = l
        return cls(images)

    @staticmethod
    def is_valid(images: Sequence[int], n: int | None = None) -> bool:
        n = len(images) if n is None else n
        return len(images) == n and sorted(images) == list(range(n))

    @property
    def n(self):
        return len(self.images)

    def row_targets(self) -> list:
        """q with P[l, q[l]] = 1."""
        q = [0] * self.n
        for j, i in enumerate(self.images):
            q[i] = j
        return q

    def inverse(self) -> "Permutation":
        return Permutation(self.row_targets())

    def apply(self, v: Sequence) -> list:
        """P v."""
        out = [None] * self.n
        for j, i in enumerate(self.images):
            out[i] = v[j]
        return out

    def apply_t(self, v: Sequence) -> list:
        """Pᵀ v."""
        return [v[i] for i in self.images]

    def matrix(self, p) -> Matrix:
        M = Matrix.zeros(self.n, self.n, p)
        for j, i in enumerate(self.images):
            M.rows[i][j] = _red(1, p)
        return M

    def sign(self) -> int:
        seen = [False] * self.n
        s = 1
        for start in range(self.n):
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = self.images[k]
                length += 1
            if length and length % 2 == 0:
                s = -s
        return s


def conjugate_by_perm(M: Matrix, P: Permutation, transpose_first: bool = False) -> Matrix:
    """P·M·Pᵀ, or Pᵀ·M·P when ``transpose_first``."""
    if M.m != M.n or M.n != P.n:
        raise DimensionMismatch("conjugation needs a square matrix of matching size")
    if transpose_first:
        im = P.images
        return Matrix._raw([[M.rows[im[i]][im[j]] for j in range(M.n)] for i in range(M.n)], M.p, M.n)
    q = P.row_targets()
    return Matrix._raw([[M.rows[q[i]][q[j]] for j in range(M.n)] for i in range(M.n)], M.p, M.n)


# ---------------------------------------------------------------- predicates


def is_lower_tri(M: Matrix) -> bool:
    return all(M.rows[i][j] == 0 for i in range(M.m) for j in range(i + 1, M.n))


def is_upper_tri(M: Matrix) -> bool:
    return all(M.rows[i][j] == 0 for i in range(M.m) for j in range(min(i, M.n)))


def is_unit_lower(M: Matrix) -> bool:
    return is_lower_tri(M) and all(M.rows[k][k] == 1 for k in range(min(M.m, M.n)))


def is_row_echelon(M: Matrix) -> bool:
    """Each nonzero row starts strictly right of the previous one; zero rows last."""
    last = -1
    seen_zero = False
    for r in M.rows:
        lead = next((j for j, x in enumerate(r) if x != 0), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last:
            return False
        last = lead
    return True


def leading_column(row) -> int | None:
    return next((j for j, x in enumerate(row) if x != 0), None)


# ---------------------------------------------------------------- factorizations


@dataclass
class PluqFactors:
    P: Permutation
    L: Matrix
    U: Matrix
    Q: Permutation
    r: int

    def product(self) -> Matrix:
        p = self.L.p
        return self.P.matrix(p) @ self.L @ self.U @ self.Q.matrix(p)

    def pivot_columns(self) -> list:
        return self.Q.row_targets()[: self.r]

    def pivot_rows(self) -> list:
        return list(self.P.images[: self.r])

    def rpm(self) -> Matrix:
        """P·[I_r 0; 0 0]·Q."""
        p = self.L.p
        R = Matrix.zeros(self.P.n, self.Q.n, p)
        q = self.Q.row_targets()
        for k in range(self.r):
            R.rows[self.P.images[k]][q[k]] = 1
        return R


def pluq_crp(A: Matrix) -> PluqFactors:
    """PLUQ with UQ in row echelon form; pivot columns are the column rank profile."""
    p, m, n = A.p, A.m, A.n
    W = A.copy_rows()
    perm = list(range(m))
    Lm = [[] for _ in range(m)]  # multipliers per working row
    k = 0
    pivcols = []
    for j in range(n):
        piv = next((i for i in range(k, m) if W[i][j] != 0), None)
        if piv is None:
            continue
        W[k], W[piv] = W[piv], W[k]
        Lm[k], Lm[piv] = Lm[piv], Lm[k]
        perm[k], perm[piv] = perm[piv], perm[k]
        inv = _inv(W[k][j], p)
        pr = W[k]
        for i in range(k + 1, m):
            if W[i][j] != 0:
                f = _red(W[i][j] * inv, p)
                row = W[i]
                for c in range(j, n):
                    row[c] = _red(row[c] - f * pr[c], p)
                Lm[i].append(f)
            else:
                Lm[i].append(_red(0, p))
        pivcols.append(j)
        k += 1
    r = k
    one, zero = _red(1, p), _red(0, p)
    L = []
    for i in range(m):
        row = list(Lm[i][: min(i, r)]) + [zero] * (r - min(i, r))
        if i < r:
            row[i] = one
        L.append(row)
    q = pivcols + [j for j in range(n) if j not in set(pivcols)]
    U = [[W[kk][q[l]] for l in range(n)] for kk in range(r)]
    return PluqFactors(
        Permutation(perm), Matrix._raw(L, p, r), Matrix._raw(U, p, n), Permutation.from_row_targets(q), r
    )


def _row_reduce_rpm(A: Matrix):
    """Row-wise elimination without row swaps; each row pivots on the leftmost
    nonzero of its reduced form. Returns (reduced rows, E multipliers, pivots)."""
    p, m, n = A.p, A.m, A.n
    W = A.copy_rows()
    E = [dict() for _ in range(m)]  # E[l][i] = multiplier of pivot row i used on row l
    pivots = []  # (row, col)
    for i in range(m):
        j = leading_column(W[i])
        if j is None:
            continue
        pivots.append((i, j))
        inv = _inv(W[i][j], p)
        pr = W[i]
        for l in range(i + 1, m):
            if W[l][j] != 0:
                f = _red(W[l][j] * inv, p)
                row = W[l]
                for c in range(j, n):
                    if pr[c] != 0:
                        row[c] = _red(row[c] - f * pr[c], p)
                E[l][i] = f
    return W, E, pivots


def pluq_rpm(A: Matrix) -> PluqFactors:
    """PLUQ whose P·[I_r;0]·Q is the rank profile matrix."""
    p, m, n = A.p, A.m, A.n
    W, E, pivots = _row_reduce_rpm(A)
    r = len(pivots)
    prow = [i for i, _ in pivots]
    pcol = [j for _, j in pivots]
    prow_set, pcol_set = set(prow), set(pcol)
    images = prow + [i for i in range(m) if i not in prow_set]
    q = pcol + [j for j in range(n) if j not in pcol_set]
    one, zero = _red(1, p), _red(0, p)
    L = []
    for k in range(m):
        src = images[k]
        row = [E[src].get(prow[kk], zero) for kk in range(r)]
        if k < r:
            row[k] = one
        L.append(row)
    U = [[W[prow[k]][q[l]] for l in range(n)] for k in range(r)]
    return PluqFactors(
        Permutation(images), Matrix._raw(L, p, r), Matrix._raw(U, p, n), Permutation.from_row_targets(q), r
    )


@dataclass
class LdupFactors:
    L: Matrix
    D: list
    U1: Matrix
    P: Permutation

    def product(self) -> Matrix:
        p = self.L.p
        return self.L @ Matrix.diag(self.D, p) @ self.U1 @ self.P.matrix(p)


def ldup(A: Matrix) -> LdupFactors:
    """A = L·Diag(D)·U1·P with A·Pᵀ of generic rank profile."""
    if A.m != A.n:
        raise DimensionMismatch("ldup needs a square matrix")
    p, n = A.p, A.n
    W, E, pivots = _row_reduce_rpm(A)
    if len(pivots) != n:
        raise SingularMatrix("matrix is singular")
    sigma = [j for _, j in pivots]
    D = [W[k][sigma[k]] for k in range(n)]
    one, zero = _red(1, p), _red(0, p)
    L = [[E[i].get(k, zero) if k < i else (one if k == i else zero) for k in range(n)] for i in range(n)]
    U1 = []
    for k in range(n):
        dinv = _inv(D[k], p)
        U1.append([_red(W[k][sigma[l]] * dinv, p) for l in range(n)])
    return LdupFactors(Matrix._raw(L, p, n), D, Matrix._raw(U1, p, n), Permutation.from_row_targets(sigma))


def determinant(A: Matrix):
    """Determinant via ldup; zero when singular."""
    try:
        f = ldup(A)
    except SingularMatrix:
        return _red(0, A.p)
    d = _red(f.P.sign(), A.p)
    for x in f.D:
        d = _red(d * x, A.p)
    return d


# ---------------------------------------------------------------- solving


def tri_solve(T: Matrix, b: Sequence, lower: bool = True) -> list:
    n, p = T.n, T.p
    if T.m != n or len(b) != n:
        raise DimensionMismatch("tri_solve shapes")
    x = zero_vec(n, p)
    order = range(n) if lower else range(n - 1, -1, -1)
    for i in order:
        d = T.rows[i][i]
        if d == 0:
            raise SingularMatrix("zero on the diagonal")
        s = b[i]
        rng = range(i) if lower else range(i + 1, n)
        for j in rng:
            s -= T.rows[i][j] * x[j]
        x[i] = _red(s * _inv(d, p), p)
    return x


def solve(A: Matrix, b: Sequence) -> list | None:
    """A particular solution of Ax = b supported on the column rank profile, or None."""
    p, m, n = A.p, A.m, A.n
    if len(b) != m:
        raise DimensionMismatch("solve shapes")
    W = [list(r) + [_red(bi, p)] for r, bi in zip(A.rows, b)]
    k = 0
    pivcols = []
    for j in range(n):
        piv = next((i for i in range(k, m) if W[i][j] != 0), None)
        if piv is None:
            continue
        W[k], W[piv] = W[piv], W[k]
        inv = _inv(W[k][j], p)
        W[k] = [_red(x * inv, p) for x in W[k]]
        pr = W[k]
        for i in range(m):
            if i != k and W[i][j] != 0:
                f = W[i][j]
                W[i] = [_red(x - f * y, p) for x, y in zip(W[i], pr)]
        pivcols.append(j)
        k += 1
    if any(W[i][n] != 0 for i in range(k, m)):
        return None
    x = zero_vec(n, p)
    for kk, j in enumerate(pivcols):
        x[j] = W[kk][n]
    return x


def rank(A: Matrix) -> int:
    return pluq_crp(A).r


# ---------------------------------------------------------------- Laurent polynomials


@dataclass(frozen=True)
class LaurentPoly:
    """Coefficients coeffs[k] of X^(low + k); trimmed to the nonzero support."""

    low: int
    coeffs: tuple
    p: int

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_polynomial(self) -> bool:
        return not self.coeffs or self.low >= 0


def _trim(low, coeffs, p):
    s = 0
    while s < len(coeffs) and coeffs[s] == 0:
        s += 1
    e = len(coeffs)
    while e > s and coeffs[e - 1] == 0:
        e -= 1
    return LaurentPoly(low + s if e > s else 0, tuple(coeffs[s:e]), p)


def laurent_poly(M: Matrix) -> LaurentPoly:
    """Sum of M[i,j]·X^(i-j)."""
    p = M.p
    low = -(M.n - 1)
    c = [0] * (M.m + M.n - 1) if M.m and M.n else []
    for i, r in enumerate(M.rows):
        for j, x in enumerate(r):
            if x:
                c[i - j - low] += x
    return _trim(low, [x % p for x in c], p)


def eval_laurent(g: LaurentPoly, lam: int) -> int:
    p = g.p
    lam %= p
    if lam == 0:
        raise ZeroEvaluationPoint("evaluation at zero")
    acc = 0
    for c in reversed(g.coeffs):
        acc = (acc * lam + c) % p
    return acc * pow(lam, g.low, p) % p


def selection_embed(m: int, indices: Sequence[int], p) -> Matrix:
    """m×len(indices) 0/1 matrix whose j-th column is e_{indices[j]} (0-based)."""
    if any(b <= a for a, b in zip(indices, indices[1:])) or any(not 0 <= i < m for i in indices):
        raise IndexOutOfRange("indices must be strictly increasing within range")
    E = Matrix.zeros(m, len(indices), p)
    for j, i in enumerate(indices):
        E.rows[i][j] = _red(1, p)
    return E


# ---------------------------------------------------------------- symmetric block LDLᵀ


@dataclass
class BlockDiagonal:
    """Blocks are (a,) or (a, b, c) meaning [[a, b], [b, c]]."""

    blocks: list

    def sizes(self) -> list:
        return [len(b) if len(b) == 1 else 2 for b in self.blocks]

    @property
    def n(self):
        return sum(self.sizes())

    def dense(self, p=None) -> Matrix:
        M = Matrix.zeros(self.n, self.n, p)
        k = 0
        for b in self.blocks:
            if len(b) == 1:
                M.rows[k][k] = _red(b[0], p)
                k += 1
            else:
                a, o, c = (_red(x, p) for x in b)
                M.rows[k][k], M.rows[k][k + 1], M.rows[k + 1][k], M.rows[k + 1][k + 1] = a, o, o, c
                k += 2
        return M

    def inertia(self) -> tuple:
        """(n_plus, n_minus) of the rational blocks."""
        pos = neg = 0
        for b in self.blocks:
            if len(b) == 1:
                pos += b[0] > 0
                neg += b[0] < 0
            else:
                a, o, c = b
                det = a * c - o * o
                if det < 0:
                    pos += 1
                    neg += 1
                elif a + c > 0:
                    pos += 2
                else:
                    neg += 2
        return pos, neg


def symmetric_block_ldlt(B: Matrix, block_sizes: Sequence[int] | None = None):
    """B = L·Δ·Lᵀ with 1×1 or 2×2 pivots taken in place, no row exchanges.

    ``block_sizes`` forces the pivot structure (e.g. one found modulo a prime).
    """
    n, p = B.n, B.p
    if B.m != n:
        raise DimensionMismatch("square matrix required")
    if any(B.rows[i][j] != B.rows[j][i] for i in range(n) for j in range(i)):
        raise NotSymmetric("matrix is not symmetric")
    S = B.copy_rows()
    L = Matrix.identity(n, p).rows
    blocks = []
    sizes = list(block_sizes) if block_sizes is not None else None
    k = 0
    while k < n:
        want = sizes.pop(0) if sizes is not None else None
        if want in (None, 1) and S[k][k] != 0:
            inv = _inv(S[k][k], p)
            piv = S[k]
            for i in range(k + 1, n):
                f = _red(S[i][k] * inv, p)
                L[i][k] = f
                if f:
                    row = S[i]
                    for j in range(k + 1, n):
                        row[j] = _red(row[j] - f * piv[j], p)
            blocks.append((S[k][k],))
            k += 1
            continue
        if want == 1 or k + 1 >= n:
            raise PivotFailure(f"no invertible pivot at position {k}")
        a, o, c = S[k][k], S[k][k + 1], S[k + 1][k + 1]
        det = _red(a * c - o * o, p)
        if det == 0:
            raise PivotFailure(f"2x2 pivot at position {k} is singular")
        dinv = _inv(det, p)
        # inverse of [[a, o], [o, c]] is [[c, -o], [-o, a]] / det
        for i in range(k + 2, n):
            u, v = S[i][k], S[i][k + 1]
            f0 = _red((u * c - v * o) * dinv, p)
            f1 = _red((v * a - u * o) * dinv, p)
            L[i][k], L[i][k + 1] = f0, f1
            row = S[i]
            for j in range(k + 2, n):
                row[j] = _red(row[j] - f0 * S[k][j] - f1 * S[k + 1][j], p)
        blocks.append((a, o, c))
        k += 2
    if sizes:
        raise PivotFailure("forced block structure longer than the matrix")
    return BlockDiagonal(blocks), Matrix._raw(L, p, n)


def signature_from_blocks(D: BlockDiagonal, n: int) -> tuple:
    pos, neg = D.inertia()
    return pos, neg, n - pos - neg


def solve_matrix(A: Matrix, B: Matrix) -> Matrix | None:
    """X with A·X = B, each column supported on the column rank profile; None if inconsistent."""
    p, m, n, k = A.p, A.m, A.n, B.n
    if B.m != m:
        raise DimensionMismatch("solve_matrix shapes")
    W = [list(r) + list(b) for r, b in zip(A.rows, B.rows)]
    piv_r = 0
    pivcols = []
    for j in range(n):
        piv = next((i for i in range(piv_r, m) if W[i][j] != 0), None)
        if piv is None:
            continue
        W[piv_r], W[piv] = W[piv], W[piv_r]
        inv = _inv(W[piv_r][j], p)
        W[piv_r] = [_red(x * inv, p) for x in W[piv_r]]
        pr = W[piv_r]
        for i in range(m):
            if i != piv_r and W[i][j] != 0:
                f = W[i][j]
                W[i] = [_red(x - f * y, p) for x, y in zip(W[i], pr)]
        pivcols.append(j)
        piv_r += 1
    if any(W[i][n + c] != 0 for i in range(piv_r, m) for c in range(k)):
        return None
    X = Matrix.zeros(n, k, p)
    for kk, j in enumerate(pivcols):
        X.rows[j] = [W[kk][n + c] for c in range(k)]
    return X


def lu_nopivot(A: Matrix):
    """A = L·U with L unit lower, U upper, no pivoting.

    A zero pivot is tolerated only when the rest of its column is zero too.
    Raises PivotFailure otherwise (the matrix lacks a generic rank profile).
    """
    if A.m != A.n:
        raise DimensionMismatch("square matrix required")
    p, n = A.p, A.n
    U = A.copy_rows()
    L = Matrix.identity(n, p).rows
    for k in range(n):
        if U[k][k] == 0:
            if any(U[i][k] != 0 for i in range(k + 1, n)):
                raise PivotFailure(f"zero pivot at {k}")
            continue
        inv = _inv(U[k][k], p)
        for i in range(k + 1, n):
            if U[i][k] != 0:
                f = _red(U[i][k] * inv, p)
                L[i][k] = f
                U[i] = [_red(a - f * b, p) for a, b in zip(U[i], U[k])]
    return Matrix._raw(L, p, n), Matrix._raw(U, p, n)


def symmetric_pivot_order(A: Matrix):
    """Symmetric permutation and 1x1/2x2 block sizes for a nonsingular symmetric
    matrix over F_p: a nonzero diagonal pivot when one remains, else the pair
    (k, j) with the first nonzero off-diagonal entry of row k.

    Returns (P, sizes) such that Pᵀ·A·P eliminates in place with those blocks.
    """
    p, n = A.p, A.n
    S = A.copy_rows()
    order = list(range(n))
    sizes = []

    def swap(a, b):
        if a != b:
            S[a], S[b] = S[b], S[a]
            for row in S:
                row[a], row[b] = row[b], row[a]
            order[a], order[b] = order[b], order[a]

    k = 0
    while k < n:
        d = next((i for i in range(k, n) if S[i][i] != 0), None)
        if d is not None:
            swap(k, d)
            inv = _inv(S[k][k], p)
            for i in range(k + 1, n):
                f = S[i][k] * inv % p
                if f:
                    S[i] = [(a - f * b) % p for a, b in zip(S[i], S[k])]
            sizes.append(1)
            k += 1
            continue
        j = next((j for j in range(k + 1, n) if S[k][j] != 0), None)
        if j is None:
            raise SingularMatrix("symmetric matrix is singular")
        swap(k + 1, j)
        a, o, c = S[k][k], S[k][k + 1], S[k + 1][k + 1]
        det = (a * c - o * o) % p
        if det == 0:
            raise SingularMatrix("singular 2x2 pivot")
        dinv = _inv(det, p)
        for i in range(k + 2, n):
            u, v = S[i][k], S[i][k + 1]
            f0 = (u * c - v * o) * dinv % p
            f1 = (v * a - u * o) * dinv % p
            S[i] = [(x - f0 * y - f1 * z) % p for x, y, z in zip(S[i], S[k], S[k + 1])]
        sizes.append(2)
        k += 2
    # column j of P is e_{order[j]}, so (Pᵀ A P)[i, j] = A[order[i], order[j]]
    return Permutation(order), sizes
