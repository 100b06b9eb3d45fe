"""Prime-field scalars, sampling sets, prime selection and exact rationals.

Hot paths elsewhere in the package work directly on Python ints reduced
modulo ``p``; :class:`FieldElement` is the typed wrapper used at API edges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol

from .errors import DivisionByZero, Exhausted, NotPrime, SecurityLevelTooLow

DEFAULT_PRIME = 2147483647  # 2^31 - 1

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RandomSource(Protocol):
    def randbelow(self, n: int) -> int: ...


class SeededRandom:
    """Replayable randomness: identical seeds give identical streams."""

    def __init__(self, seed: int | str | bytes | None = 0):
        self._rng = random.Random(seed)

    def randbelow(self, n: int) -> int:
        return self._rng.randrange(n)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        # p = 2 is admitted for exhaustive small-field structure tests.
        if not (2 <= self.p < 1 << 62) or not is_prime(self.p):
            raise NotPrime(f"{self.p} is not a prime below 2^62")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other.value
        return other % self.field.p

    def __add__(self, other):
        return FieldElement((self.value + self._other(other)) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement((self.value - self._other(other)) % self.field.p, self.field)

    def __rsub__(self, other):
        return FieldElement((self._other(other) - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        return FieldElement(self.value * self._other(other) % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.field.p, self.field)

    def inv(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._other(other)), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"F{self.field.p}({self.value})"


def fp_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
        "inv": a.inv,
        "neg": lambda: -a,
    }
    return ops[op]()


@dataclass(frozen=True)
class SampleSet:
    """Finite subset S of F_p that verifier challenges are drawn from.

    kind is ``"field"``, ``"nonzero"`` or ``"range"`` (the latter uses
    ``[lo, hi)``).
    """

    kind: str = "field"
    lo: int = 0
    hi: int = 0

    def size(self, p: int) -> int:
        if self.kind == "field":
            return p
        if self.kind == "nonzero":
            return p - 1
        return self.hi - self.lo

    def require(self, p: int, minimum: int = 2) -> int:
        s = self.size(p)
        if s < max(minimum, 2):
            raise SecurityLevelTooLow(f"|S|={s} below the required {max(minimum, 2)}")
        return s

    def sample(self, p: int, rng: RandomSource) -> int:
        if self.kind == "field":
            return rng.randbelow(p)
        if self.kind == "nonzero":
            return 1 + rng.randbelow(p - 1)
        if not (0 <= self.lo < self.hi <= p):
            raise ValueError("range sample set must lie inside [0, p)")
        return self.lo + rng.randbelow(self.hi - self.lo)


WHOLE = SampleSet("field")
NONZERO = SampleSet("nonzero")


def sample(s: SampleSet, field: PrimeField, rng: RandomSource) -> FieldElement:
    return FieldElement(s.sample(field.p, rng), field)


def random_prime(bits: int, excluded=(), rng: RandomSource | None = None, max_draws: int = 10_000) -> int:
    if not 8 <= bits <= 62:
        raise ValueError("bits must lie in [8, 62]")
    rng = rng or SeededRandom(None)
    lo = 1 << (bits - 1)
    excluded = set(excluded)
    for _ in range(max_draws):
        c = (lo + rng.randbelow(lo)) | 1
        if c not in excluded and is_prime(c):
            return c
    raise Exhausted(f"no {bits}-bit prime found in {max_draws} draws")


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi) by a plain sieve."""
    sieve = bytearray([1]) * hi
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(hi**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi, i)))
    return [i for i in range(max(lo, 2), hi) if sieve[i]]


BigRational = Fraction


def rational_arith(a: Fraction, b: Fraction | None, op: str) -> Fraction:
    if op in ("div", "inv"):
        divisor = a if op == "inv" else b
        if divisor == 0:
            raise DivisionByZero("rational division by zero")
    return {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
        "inv": lambda: 1 / a,
        "neg": lambda: -a,
    }[op]()
