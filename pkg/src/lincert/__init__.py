"""Interactive and non-interactive certificates for exact linear algebra."""

from .errors import BadCertificate, LincertError, Reject
from .field import DEFAULT_PRIME, PrimeField, SampleSet
from .fiat_shamir import CertificateFile, fs_prove, fs_verify
from .linalg import Matrix, Permutation
from .protocols import NAMES, Config, Instance, RunResult, run

__version__ = "0.1.0"

__all__ = [
    "BadCertificate",
    "CertificateFile",
    "Config",
    "DEFAULT_PRIME",
    "Instance",
    "LincertError",
    "Matrix",
    "NAMES",
    "Permutation",
    "PrimeField",
    "Reject",
    "RunResult",
    "SampleSet",
    "fs_prove",
    "fs_verify",
    "run",
]
