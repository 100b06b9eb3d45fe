from fractions import Fraction

import sympy

from lincert.linalg import Matrix
from lincert.oracle import oracle_crp, oracle_det, oracle_grp, oracle_rank, oracle_rpm, oracle_rrp, oracle_signature

P = 101


def test_profiles_of_a_small_matrix():
    A = Matrix([[0, 1, 1], [0, 2, 2], [3, 0, 1]], P)
    assert oracle_rank(A) == 2
    assert oracle_crp(A) == [0, 1]
    assert oracle_rrp(A) == [0, 2]
    assert oracle_rpm(A).rows == [[0, 1, 0], [0, 0, 0], [1, 0, 0]]


def test_determinant_and_generic_profile():
    A = Matrix([[2, 1], [1, 1]], P)
    assert oracle_det(A) == 1
    assert oracle_grp(A)
    assert not oracle_grp(Matrix([[0, 1], [1, 0]], P))
    assert oracle_det(Matrix([[0, 1], [1, 0]], P)) == P - 1


def test_signature_counts_multiplicity():
    A = Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -2, 0], [0, 0, 0, 0]], None)
    assert oracle_signature(A) == (2, 1, 1)


def test_signature_matches_eigenvalues():
    rows = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    eig = sympy.Matrix(rows).eigenvals()
    pos = sum(m for v, m in eig.items() if v.is_positive)
    assert oracle_signature(Matrix(rows, None)) == (pos, 3 - pos, 0)


def test_signature_rational_entries():
    A = Matrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 3), Fraction(-1, 5)]], None)
    assert oracle_signature(A) == (1, 1, 0)
