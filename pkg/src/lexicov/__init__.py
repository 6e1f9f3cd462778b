"""lexicov: short linear covering codes of radius 3.

Greedy parity-check constructions (leximatrix, inverse leximatrix, and
randomized greedy variants) over GF(q), with independent verification of
covering radius, minimum distance, and covering density, plus bound
reporting and a best-known-length registry.
"""

from .construct import (
    Code,
    GreedyConfig,
    d_rand_greedy,
    invleximatrix,
    leximatrix,
    rand_greedy,
    stable_prefix,
)
from .gf import FieldSpec, field_for_order, make_field
from .verify import VerificationReport, covering_density, verify_code

__version__ = "0.1.0"

__all__ = [
    "Code",
    "FieldSpec",
    "GreedyConfig",
    "VerificationReport",
    "covering_density",
    "d_rand_greedy",
    "field_for_order",
    "invleximatrix",
    "leximatrix",
    "make_field",
    "rand_greedy",
    "stable_prefix",
    "verify_code",
    "__version__",
]
