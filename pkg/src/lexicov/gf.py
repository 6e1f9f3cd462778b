"""Finite field arithmetic over GF(p) and GF(p^m) with integer element labels.

Elements of GF(q) are plain Python ints in [0, q).  For prime q, labels are
residues mod p and arithmetic is ordinary modular arithmetic.  For q = p^m
with m >= 2, label 0 is the zero element and label u in [1, q) denotes
alpha^(u-1), where alpha is a root of the field's primitive polynomial.
Under this labeling multiplication is exponent arithmetic and needs no
tables; addition goes through the polynomial representation of each power
of alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

LABEL_CAP = 1 << 20  # practical cap on q


class FieldError(ValueError):
    pass


class NonPrimeP(FieldError):
    pass


class NotPrimitive(FieldError):
    pass


class UnknownDefaultPolynomial(FieldError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


# Primitive polynomials for the non-prime fields used by the length tables.
# Coefficients are listed constant term first; e.g. x^2+2x+2 over GF(3) is
# (2, 2, 1).  All polynomials are monic of degree m.
DEFAULT_POLYNOMIALS: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 0, 0, 1, 1),
    25: (2, 1, 1),
    27: (1, 1, 2, 1),
    32: (1, 0, 0, 1, 0, 1),
    49: (3, 1, 1),
    # the GF(64) entry is the Conway polynomial x^6+x^4+x^3+x+1 (the printed
    # source drops the x term, which yields a non-primitive polynomial)
    64: (1, 1, 0, 1, 1, 0, 1),
    81: (2, 1, 0, 0, 1),
    121: (2, 4, 1),
    125: (2, 3, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
    169: (2, 1, 1),
    243: (1, 2, 0, 0, 0, 1),
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),
    289: (3, 1, 1),
    343: (2, 3, 0, 1),
    361: (2, 1, 1),
    512: (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    529: (5, 2, 1),
    625: (2, 2, 1, 0, 1),
    729: (2, 1, 0, 0, 0, 0, 1),
    841: (2, 24, 1),
    961: (3, 29, 1),
    1024: (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    1331: (9, 2, 0, 1),
    1369: (2, 33, 1),
    1681: (6, 38, 1),
    1849: (3, 1, 1),
    2048: (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    2187: (1, 2, 1, 0, 0, 0, 0, 1),
    2197: (7, 0, 1, 1),
    2209: (13, 1, 1),
    2401: (3, 4, 5, 0, 1),
    2809: (2, 49, 1),
    3125: (2, 4, 0, 0, 0, 1),
    3481: (2, 58, 1),
    3721: (2, 60, 1),
    4096: (1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    4489: (2, 63, 1),
    4913: (14, 1, 0, 1),
    5041: (7, 69, 1),
    5329: (5, 70, 1),
    6241: (3, 78, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Immutable description of GF(q) plus lookup tables for fast arithmetic.

    Safe for concurrent read access; all operations are pure.
    """

    p: int
    m: int
    q: int
    poly: tuple[int, ...] | None
    # label u -> digits of its polynomial representation, shape (q, m),
    # least significant (constant) digit first.  None for prime fields.
    _digits: np.ndarray | None = field(repr=False, default=None)
    # base-p integer encoding of the polynomial representation -> label
    _vec2label: np.ndarray | None = field(repr=False, default=None)
    _inv: np.ndarray = field(repr=False, default=None)
    _neg: np.ndarray = field(repr=False, default=None)

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return int(self.vadd(np.asarray(a), np.asarray(b)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return (a * b) % self.p
        return (a - 1 + b - 1) % (self.q - 1) + 1

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return int(self._inv[a])

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    # -- vectorized operations --------------------------------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise field addition of label arrays (broadcasting)."""
        if self.m == 1:
            return (a + b) % self.p
        da = self._digits[a]
        db = self._digits[b]
        ds = da + db
        ds[ds >= self.p] -= self.p
        enc = ds @ self._pbase
        return self._vec2label[enc]

    def vneg(self, a: np.ndarray) -> np.ndarray:
        return self._neg[a]

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise field multiplication of label arrays (broadcasting)."""
        if self.m == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(a, b)
        out = (a + b - 2) % (self.q - 1) + 1
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        return self._inv[a]

    @property
    def _pbase(self) -> np.ndarray:
        # powers of p used to encode digit vectors as integers
        return p_powers(self.p, self.m)


_PBASE_CACHE: dict[tuple[int, int], np.ndarray] = {}


def p_powers(p: int, m: int) -> np.ndarray:
    key = (p, m)
    if key not in _PBASE_CACHE:
        _PBASE_CACHE[key] = p ** np.arange(m, dtype=np.int64)
    return _PBASE_CACHE[key]


def _build_extension_tables(p: int, m: int, poly: Sequence[int]):
    """Walk the powers of alpha, returning (digits, vec2label) tables.

    Raises NotPrimitive unless alpha has multiplicative order exactly q-1.
    """
    q = p**m
    digits = np.zeros((q, m), dtype=np.int64)
    # label 1 = alpha^0
    cur = [1] + [0] * (m - 1)
    seen = {}
    for u in range(1, q):
        key = tuple(cur)
        if key in seen:
            raise NotPrimitive(
                f"alpha has period {u - seen[key]} < {q - 1}; "
                f"polynomial {tuple(poly)} is not primitive over GF({p})"
            )
        if all(c == 0 for c in cur):
            raise NotPrimitive(
                f"polynomial {tuple(poly)} is not invertible-preserving over GF({p})"
            )
        seen[key] = u
        digits[u] = cur
        # multiply by alpha: shift and reduce by the monic primitive poly
        top = cur[m - 1]
        cur = [0] + cur[: m - 1]
        if top:
            for k in range(m):
                cur[k] = (cur[k] - top * poly[k]) % p
    # closure: alpha^(q-1) must be 1
    if tuple(cur) != (1,) + (0,) * (m - 1):
        raise NotPrimitive(
            f"alpha^{q - 1} != 1 for polynomial {tuple(poly)} over GF({p})"
        )
    enc = digits @ p_powers(p, m)
    vec2label = np.zeros(q, dtype=np.int64)
    vec2label[enc] = np.arange(q, dtype=np.int64)
    return digits, vec2label


def make_field(p: int, m: int = 1, poly: Sequence[int] | None = None) -> FieldSpec:
    """Construct GF(p^m) under the integer labeling.

    poly lists m+1 coefficients, constant term first, and must be monic of
    degree m and primitive.  If omitted for m >= 2, the default polynomial
    table is consulted; prime fields need no polynomial.
    """
    if not is_prime(p):
        raise NonPrimeP(f"p={p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    q = p**m
    if q > LABEL_CAP:
        raise FieldError(f"q={q} exceeds the supported cap {LABEL_CAP}")

    if m == 1:
        neg = (-np.arange(q, dtype=np.int64)) % p
        inv = np.zeros(q, dtype=np.int64)
        if q > 1:
            inv[1:] = [pow(int(a), p - 2, p) for a in range(1, q)]
        return FieldSpec(p=p, m=1, q=q, poly=None, _inv=inv, _neg=neg)

    if poly is None:
        if q not in DEFAULT_POLYNOMIALS:
            raise UnknownDefaultPolynomial(
                f"no default primitive polynomial for q={q}; supply one explicitly"
            )
        poly = DEFAULT_POLYNOMIALS[q]
    poly = tuple(int(c) % p for c in poly[:-1]) + (int(poly[-1]),)
    if len(poly) != m + 1 or poly[-1] != 1:
        raise FieldError(
            f"polynomial must be monic of degree {m} (got coefficients {poly})"
        )
    digits, vec2label = _build_extension_tables(p, m, poly)

    # inverse of alpha^(u-1) is alpha^(q-1-(u-1)); negation via digit vectors
    labels = np.arange(q, dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = (q - labels[1:]) % (q - 1) + 1
    negdig = (-digits) % p
    neg = vec2label[negdig @ p_powers(p, m)]
    return FieldSpec(
        p=p, m=m, q=q, poly=poly,
        _digits=digits, _vec2label=vec2label, _inv=inv, _neg=neg,
    )


def field_for_order(q: int, poly: Sequence[int] | None = None) -> FieldSpec:
    """make_field from the field order q, factoring q as p^m."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            t = q
            while t % p == 0:
                t //= p
                m += 1
            if t != 1:
                raise FieldError(f"q={q} is not a prime power")
            return make_field(p, m, poly)
    raise FieldError(f"q={q} is not a prime power")


def parse_poly(text: str) -> tuple[int, ...]:
    """Parse the textual polynomial form: space-separated labels, constant first."""
    return tuple(int(t) for t in text.split())


def format_poly(poly: Sequence[int]) -> str:
    return " ".join(str(c) for c in poly)
