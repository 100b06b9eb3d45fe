"""Text matrix files.

First line ``lincert-matrix v1 M N F`` where F is a prime modulus or ``Q``
for integer/rational entries; then M lines of N whitespace-separated entries.
Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import LincertError, NotPrime
from .field import is_prime
from .linalg import Matrix

HEADER = "lincert-matrix"
VERSION = "v1"


class MatrixFormatError(LincertError):
    pass


def parse_matrix(text: str) -> Matrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != HEADER or head[1] != VERSION:
        raise MatrixFormatError(f"expected '{HEADER} {VERSION} M N F' header")
    try:
        m, n = int(head[2]), int(head[3])
    except ValueError:
        raise MatrixFormatError("dimensions must be integers") from None
    p = None if head[4] == "Q" else int(head[4])
    if p is not None and not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"expected {m} rows, found {len(body)}")
    rows = []
    for k, ln in enumerate(body):
        cells = ln.split()
        if len(cells) != n:
            raise MatrixFormatError(f"row {k} has {len(cells)} entries, expected {n}")
        try:
            rows.append([Fraction(c) if p is None else int(c) % p for c in cells])
        except ValueError:
            raise MatrixFormatError(f"row {k} has a non-numeric entry") from None
    return Matrix(rows, p, n)


def format_matrix(A: Matrix) -> str:
    field = "Q" if A.p is None else str(A.p)
    out = [f"{HEADER} {VERSION} {A.m} {A.n} {field}"]
    out += [" ".join(str(x) for x in row) for row in A.rows]
    return "\n".join(out) + "\n"


def read_matrix(path: str) -> Matrix:
    with open(path, encoding="utf-8") as f:
        return parse_matrix(f.read())


def write_matrix(A: Matrix, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_matrix(A))
