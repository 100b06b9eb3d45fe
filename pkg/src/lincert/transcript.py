"""Resumable prover/verifier sessions and the in-process runner.

Protocol endpoints are generators. They ``yield Message(...)`` to send and
``yield Expect(...)`` to receive; the value sent back into the generator is
the inbound :class:`Message`. A verifier generator returns its certified
value, or raises :class:`Reject`. A prover raises :class:`ProverAbort` when
it cannot back its claim.
"""

from __future__ import annotations

import hashlib
import random
import struct
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Generator, Sequence

from .codec import TAG_ABORT, Message, encode_message
from .errors import Deadlock, LincertError, ProtocolViolation, ProverAbort, Reject, SecurityLevelTooLow
from .field import NONZERO, WHOLE, SampleSet
from .linalg import Matrix


@dataclass(frozen=True)
class Expect:
    """What the next inbound message must look like. ``None`` counts are unchecked."""

    tags: tuple
    elems: int | None = 0
    idx: int | None = 0
    rats: int | None = 0
    modulus: int | None = None

    def problem(self, msg: Message) -> str | None:
        if msg.tag not in self.tags:
            return f"unexpected tag {msg.tag}, wanted {self.tags}"
        for name in ("elems", "idx", "rats"):
            want = getattr(self, name)
            got = len(getattr(msg, name))
            if want is not None and got != want:
                return f"tag {msg.tag}: {got} {name}, wanted {want}"
        if self.modulus is not None and any(not 0 <= e < self.modulus for e in msg.elems):
            return "field element out of range"
        return None


def expect(tag: int, elems: int | None = 0, idx: int | None = 0, rats: int | None = 0, modulus=None) -> Expect:
    return Expect((tag,), elems, idx, rats, modulus)


@dataclass
class Stats:
    elements_sent: int = 0
    elements_received: int = 0
    rounds: int = 0
    mu_count: int = 0

    @property
    def elements(self) -> int:
        return self.elements_sent + self.elements_received


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None
    value: Any = None


# ---------------------------------------------------------------- coins


class InteractiveCoins:
    """Private seeded randomness of an interactive verifier."""

    def __init__(self, seed=0):
        self._rng = random.Random(seed)

    def randbelow(self, n: int) -> int:
        return self._rng.randrange(n)

    def absorb(self, msg: Message) -> None:
        pass


class FiatShamirCoins:
    """Challenges squeezed from a SHA-256 chain over the header and prover messages."""

    def __init__(self, seed_bytes: bytes):
        self._state = hashlib.sha256(b"lincert-fs-v1" + seed_bytes).digest()
        self._counter = 0

    def absorb(self, msg: Message) -> None:
        self._state = hashlib.sha256(self._state + encode_message(msg)).digest()
        self._counter = 0

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            block = hashlib.sha256(self._state + struct.pack("<Q", self._counter)).digest()
            self._counter += 1
            v = int.from_bytes(block[:8], "little")
            if v < limit:
                return v % n


class VerifierCtx:
    """Verifier-side helpers: sampling from S and μ-counted products with the input."""

    def __init__(self, p: int, coins, stats: Stats, sample_set: SampleSet = WHOLE):
        self.p = p
        self.coins = coins
        self.stats = stats
        self.S = sample_set

    def sample(self, nonzero: bool = False, p: int | None = None) -> int:
        p = self.p if p is None else p
        s = self.S
        if nonzero:
            s = NONZERO if s.kind == "field" else s
            v = s.sample(p, self.coins)
            while v == 0:
                v = s.sample(p, self.coins)
            return v
        return s.sample(p, self.coins)

    def sample_vec(self, k: int, nonzero: bool = False, p: int | None = None) -> list:
        return [self.sample(nonzero, p) for _ in range(k)]

    def choice(self, seq: Sequence):
        return seq[self.coins.randbelow(len(seq))]

    def mv(self, A: Matrix, v: Sequence) -> list:
        self.stats.mu_count += 1
        return A.matvec(v)

    def vm(self, u: Sequence, A: Matrix) -> list:
        self.stats.mu_count += 1
        return A.vecmat(u)


# ---------------------------------------------------------------- sessions


class Session:
    def __init__(
        self,
        gen: Generator,
        role: str,
        protocol_id: int,
        on_receive: Callable[[Message], None] | None = None,
        stats: Stats | None = None,
    ):
        self._gen = gen
        self.role = role
        self.protocol_id = protocol_id
        self._on_receive = on_receive
        self.stats = stats if stats is not None else Stats()
        self.pending: Expect | None = None
        self.finished = False
        self.verdict: Verdict | None = None
        self.transcript: list = []
        self._last_dir = None
        self._started = False

    @property
    def is_verifier(self) -> bool:
        return self.role == "verifier"

    def start(self) -> list:
        if self._started:
            raise ProtocolViolation("session already started")
        self._started = True
        return self._advance(None, first=True)

    def step(self, msg: Message) -> list:
        if self.finished or self.pending is None:
            raise ProtocolViolation(f"{self.role} is not waiting for a message")
        want, self.pending = self.pending, None
        self.transcript.append(("in", msg))
        if self.is_verifier:
            self.stats.elements_received += msg.size
            if self._last_dir != "in":
                self.stats.rounds += 1
            self._last_dir = "in"
            if self._on_receive:
                self._on_receive(msg)
            if msg.tag == TAG_ABORT:
                return self._finish(Verdict(False, "prover aborted"))
            problem = want.problem(msg)
            if problem:
                return self._finish(Verdict(False, f"malformed message: {problem}"))
        else:
            problem = want.problem(msg)
            if problem:
                self._gen.close()
                self.finished = True
                return [Message(TAG_ABORT)]
        return self._advance(msg)

    def _finish(self, verdict: Verdict) -> list:
        self._gen.close()
        self.finished = True
        self.verdict = verdict
        return []

    def _advance(self, value, first: bool = False) -> list:
        out = []
        while True:
            try:
                y = next(self._gen) if first else self._gen.send(value)
            except StopIteration as stop:
                self.finished = True
                if self.is_verifier:
                    self.verdict = Verdict(True, None, stop.value)
                return out
            except Reject as e:
                self.finished = True
                self.verdict = Verdict(False, e.reason)
                return out
            except SecurityLevelTooLow:
                raise
            except (ProverAbort, LincertError) as e:
                self.finished = True
                if self.is_verifier:
                    self.verdict = Verdict(False, f"invalid input: {e}")
                    return out
                # a prover that cannot handle its input gives up on the wire
                out.append(Message(TAG_ABORT))
                self.transcript.append(("out", out[-1]))
                return out
            first, value = False, None
            if isinstance(y, Expect):
                self.pending = y
                return out
            if not isinstance(y, Message):
                raise ProtocolViolation(f"session yielded {type(y).__name__}")
            out.append(y)
            self.transcript.append(("out", y))
            if self.is_verifier:
                self.stats.elements_sent += y.size
                self._last_dir = "out"


def run_sessions(prover: Session, verifier: Session) -> tuple:
    """Shuttle messages between two sessions until the verifier decides."""
    if prover.protocol_id != verifier.protocol_id:
        raise ProtocolViolation(
            f"protocol mismatch: prover {prover.protocol_id:#x}, verifier {verifier.protocol_id:#x}"
        )
    to_v = deque(prover.start())
    to_p = deque(verifier.start())
    while not verifier.finished:
        if to_v:
            to_p.extend(verifier.step(to_v.popleft()))
        elif to_p and not prover.finished:
            to_v.extend(prover.step(to_p.popleft()))
        else:
            raise Deadlock("both endpoints are idle")
    return verifier.verdict, verifier.stats
