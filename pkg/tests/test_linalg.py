import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lincert.errors import NotSymmetric, PivotFailure, SingularMatrix, ZeroEvaluationPoint
from lincert.instances import rand_nonsingular, rand_rank, rand_symmetric_int
from lincert.linalg import (
    BlockDiagonal,
    Matrix,
    Permutation,
    conjugate_by_perm,
    determinant,
    eval_laurent,
    is_row_echelon,
    is_unit_lower,
    is_upper_tri,
    laurent_poly,
    ldup,
    lu_nopivot,
    pluq_crp,
    pluq_rpm,
    rank,
    selection_embed,
    solve,
    solve_matrix,
    symmetric_block_ldlt,
    symmetric_pivot_order,
)
from lincert.oracle import oracle_det, oracle_rank, oracle_signature

P = 101


@st.composite
def matrices(draw, p=P, max_dim=6):
    m, n = draw(st.integers(1, max_dim)), draw(st.integers(1, max_dim))
    r = draw(st.integers(0, min(m, n)))
    return rand_rank(random.Random(draw(st.integers(0, 2**32))), m, n, p, r)


def test_permutation_conventions():
    P3 = Permutation([2, 0, 1])
    M = P3.matrix(P)
    v = [10, 20, 30]
    assert P3.apply(v) == M.matvec(v)
    assert P3.apply_t(v) == M.T.matvec(v)
    Q = Permutation.from_row_targets([1, 2, 0])
    assert all(Q.matrix(P).rows[i][t] == 1 for i, t in enumerate([1, 2, 0]))
    assert P3.inverse().apply(P3.apply(v)) == v
    assert Permutation([1, 0]).sign() == -1 and Permutation([0, 1, 2]).sign() == 1


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_pluq_crp_factors(A):
    f = pluq_crp(A)
    assert f.product() == A
    assert f.r == rank(A) == oracle_rank(A)
    assert all(a < b for a, b in zip(f.pivot_columns(), f.pivot_columns()[1:]))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_pluq_rpm_factors(A):
    f = pluq_rpm(A)
    assert f.product() == A
    R = f.rpm()
    assert sum(map(sum, R.rows)) == rank(A)


@given(st.integers(1, 7), st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_ldup_and_determinant(n, seed):
    A = rand_nonsingular(random.Random(seed), n, P)
    f = ldup(A)
    assert f.product() == A
    assert is_unit_lower(f.L) and is_unit_lower(f.U1.T)
    assert determinant(A) == oracle_det(A)


def test_ldup_singular():
    with pytest.raises(SingularMatrix):
        ldup(Matrix([[1, 2], [2, 4]], P))
    assert determinant(Matrix([[1, 2], [2, 4]], P)) == 0


def test_lu_nopivot():
    A = Matrix([[2, 1], [4, 5]], P)
    L, U = lu_nopivot(A)
    assert L @ U == A and is_upper_tri(U)
    with pytest.raises(PivotFailure):
        lu_nopivot(Matrix([[0, 1], [1, 0]], P))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_solve(A):
    rng = random.Random(1)
    x = [rng.randrange(P) for _ in range(A.n)]
    b = A.matvec(x)
    y = solve(A, b)
    assert y is not None and A.matvec(y) == b
    X = solve_matrix(A, Matrix([[v] for v in b], P))
    assert X is not None and A @ X == Matrix([[v] for v in b], P)


def test_solve_inconsistent():
    assert solve(Matrix([[1, 0], [0, 0]], P), [0, 1]) is None


def test_row_echelon_predicate():
    assert is_row_echelon(Matrix([[1, 2, 3], [0, 0, 4], [0, 0, 0]], P))
    assert not is_row_echelon(Matrix([[0, 1], [1, 0]], P))


def test_laurent_polynomial():
    M = Matrix([[1, 2], [3, 4]], P)
    g = laurent_poly(M)  # 2X^-1 + 5 + 3X
    assert (g.low, g.coeffs) == (-1, (2, 5, 3))
    lam = 7
    assert eval_laurent(g, lam) == (2 * pow(lam, -1, P) + 5 + 3 * lam) % P
    with pytest.raises(ZeroEvaluationPoint):
        eval_laurent(g, 0)


def test_selection_embed():
    E = selection_embed(4, [1, 3], P)
    assert E.rows == [[0, 0], [1, 0], [0, 0], [0, 1]]


def test_block_inertia():
    D = BlockDiagonal([(Fraction(2),), (Fraction(1), Fraction(3), Fraction(1)), (Fraction(-1),)])
    assert D.inertia() == (2, 2)
    assert BlockDiagonal([(Fraction(0), Fraction(1), Fraction(0))]).inertia() == (1, 1)


@given(st.integers(1, 7), st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_symmetric_block_ldlt_over_q(n, seed):
    A = rand_symmetric_int(random.Random(seed), n)
    q = (1 << 31) - 1
    I = pluq_crp(A.with_p(q)).pivot_columns()
    A_I = A.submatrix(I, I)  # nonsingular principal block on the column profile
    P_, sizes = symmetric_pivot_order(A_I.with_p(q))
    B = conjugate_by_perm(A_I, P_, transpose_first=True)
    D, L = symmetric_block_ldlt(B, sizes)
    assert L @ D.dense() @ L.T == B
    pos, neg = D.inertia()
    assert (pos, neg, n - len(I)) == oracle_signature(A)


def test_ldlt_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        symmetric_block_ldlt(Matrix([[1, 2], [3, 4]], P))
