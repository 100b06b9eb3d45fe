"""Exception types shared across the package."""


class LincertError(Exception):
    pass


class DivisionByZero(LincertError, ZeroDivisionError):
    pass


class NotPrime(LincertError, ValueError):
    pass


class Exhausted(LincertError):
    pass


class DimensionMismatch(LincertError, ValueError):
    pass


class SingularMatrix(LincertError):
    pass


class PivotFailure(LincertError):
    pass


class ZeroEvaluationPoint(LincertError, ValueError):
    pass


class IndexOutOfRange(LincertError, IndexError):
    pass


class SecurityLevelTooLow(LincertError):
    """The sampling set is too small for the protocol's soundness bound."""


class ProtocolViolation(LincertError):
    pass


class Deadlock(LincertError):
    pass


class BadCertificate(LincertError):
    pass


class DigestMismatch(BadCertificate):
    pass


class NotSymmetric(LincertError, ValueError):
    pass


class Reject(LincertError):
    """Raised inside verifier code; the session turns it into a rejecting verdict."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class ProverAbort(LincertError):
    """Raised inside prover code when the claim cannot be supported."""
