"""Communication and verifier-cost budgets per protocol, in scalar items and
matrix-vector products with the input."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import rank
from .protocols.common import Instance


@dataclass(frozen=True)
class Budget:
    items: int | None
    items_exact: bool
    mu: int | None = None
    mu_exact: bool = True
    rounds: int | None = None

    def check(self, stats) -> list:
        """Human-readable violations; empty when the run is within budget."""
        out = []
        if self.items is not None:
            ok = stats.elements == self.items if self.items_exact else stats.elements <= self.items
            if not ok:
                out.append(f"items {stats.elements} vs {'=' if self.items_exact else '<='} {self.items}")
        if self.mu is not None:
            ok = stats.mu_count == self.mu if self.mu_exact else stats.mu_count <= self.mu
            if not ok:
                out.append(f"mu {stats.mu_count} vs {'=' if self.mu_exact else '<='} {self.mu}")
        if self.rounds is not None and stats.rounds != self.rounds:
            out.append(f"rounds {stats.rounds} vs {self.rounds}")
        return out


def budget(name: str, inst: Instance) -> Budget:
    A = inst.A
    m, n = A.m, A.n
    if name == "freivalds":
        return Budget(None, False, 3)
    if name == "tri_equiv":
        return Budget(2 * n, True)
    if name == "grp":
        return Budget(6 * n, True, 1)
    if name == "ldup":
        return Budget(8 * n, False, 1)
    if name == "rank_upper":
        return Budget(m + n, True, 2)
    r = rank(A) if A.p is not None else None
    if name == "rank_lower":
        r = len(inst.claim) if inst.claim is not None else r
        return Budget(m + 2 * r, True, 1)
    if name == "crp_interactive":
        return Budget(m + n + 4 * r, True, 2, mu_exact=False)
    if name == "rpm_invertible":
        return Budget(10 * n, False, 1)
    if name == "rpm_full":
        return Budget(m + n + min(m, n) + 17 * r, False, 4, mu_exact=False)
    if name == "tri_equiv_const":
        return Budget(3 * n + 1, True, 2, rounds=3)
    if name == "crp_const":
        return Budget(m + n + 5 * r + 1, True, 2, mu_exact=False, rounds=3)
    if name in ("crp_ni", "rpm_ni"):
        return Budget(m + n + 1 + r * (m + n), True, 1)
    if name == "determinant":
        return Budget(8 * n, False, None)
    return Budget(None, False)
