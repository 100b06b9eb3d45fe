"""Protocol registry and the in-process runner."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import ProtocolViolation
from ..transcript import InteractiveCoins, Session, Stats, Verdict, VerifierCtx, run_sessions
from . import basic, lu, profiles, signature
from .common import Config, Instance


@dataclass(frozen=True)
class ProtocolDef:
    pid: int
    name: str
    prover: Callable
    verifier: Callable
    needs_b: bool = False


_SPECS = [
    ProtocolDef(0x01, "freivalds", basic.freivalds_prover, basic.freivalds_verifier, needs_b=True),
    ProtocolDef(0x02, "crp_ni", profiles.crp_ni_prover, profiles.crp_ni_verifier),
    ProtocolDef(0x03, "rpm_ni", profiles.rpm_ni_prover, profiles.rpm_ni_verifier),
    ProtocolDef(0x04, "tri_equiv", basic.tri_equiv_prover, basic.tri_equiv_verifier, needs_b=True),
    ProtocolDef(0x05, "grp", lu.grp_prover, lu.grp_verifier),
    ProtocolDef(0x06, "ldup", lu.ldup_prover, lu.ldup_verifier),
    ProtocolDef(0x07, "rank_upper", basic.rank_upper_prover, basic.rank_upper_verifier),
    ProtocolDef(0x08, "rank_lower", basic.rank_lower_prover, basic.rank_lower_verifier),
    ProtocolDef(0x09, "crp_interactive", profiles.crp_interactive_prover, profiles.crp_interactive_verifier),
    ProtocolDef(0x0A, "rpm_invertible", lu.rpm_invertible_prover, lu.rpm_invertible_verifier),
    ProtocolDef(0x0B, "rpm_full", profiles.rpm_full_prover, profiles.rpm_full_verifier),
    ProtocolDef(0x0C, "signature", signature.signature_prover, signature.signature_verifier),
    ProtocolDef(0x0D, "tri_equiv_const", basic.tri_equiv_const_prover, basic.tri_equiv_const_verifier, needs_b=True),
    ProtocolDef(0x0E, "crp_const", profiles.crp_const_prover, profiles.crp_const_verifier),
    ProtocolDef(0x0F, "determinant", lu.determinant_prover, lu.determinant_verifier),
]

BY_NAME = {s.name: s for s in _SPECS}
BY_ID = {s.pid: s for s in _SPECS}
NAMES = [s.name for s in _SPECS]


def get(key) -> ProtocolDef:
    proto = BY_ID.get(key) if isinstance(key, int) else BY_NAME.get(key)
    if proto is None:
        raise ProtocolViolation(f"unknown protocol {key!r}")
    return proto


def prover_session(name, inst: Instance, cfg: Config | None = None, prover: Callable | None = None) -> Session:
    proto = get(name)
    fn = prover or proto.prover
    return Session(fn(inst, cfg or Config()), "prover", proto.pid)


def verifier_session(name, inst: Instance, coins, cfg: Config | None = None) -> Session:
    proto = get(name)
    cfg = cfg or Config()
    stats = Stats()
    ctx = VerifierCtx(inst.p if inst.p is not None else 0, coins, stats, cfg.sample_set)
    return Session(proto.verifier(inst, ctx, cfg), "verifier", proto.pid, on_receive=coins.absorb, stats=stats)


@dataclass
class RunResult:
    verdict: Verdict
    stats: Stats
    transcript: list

    @property
    def accepted(self) -> bool:
        return self.verdict.accepted


def run(name, inst: Instance, seed=0, cfg: Config | None = None, prover: Callable | None = None) -> RunResult:
    """Honest (or supplied) prover against a seeded interactive verifier, in process."""
    cfg = cfg or Config()
    v = verifier_session(name, inst, InteractiveCoins(seed), cfg)
    p = prover_session(name, inst, cfg, prover)
    verdict, stats = run_sessions(p, v)
    return RunResult(verdict, stats, v.transcript)


__all__ = ["Config", "Instance", "ProtocolDef", "RunResult", "get", "run", "NAMES", "BY_ID", "BY_NAME"]
