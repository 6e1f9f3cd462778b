"""Points of PG(r-1, q) as normalized columns, with lexicographic indexing.

A column is an r-vector of field labels whose leftmost nonzero entry is 1;
each projective point has exactly one such representative.  The lex index of
a column is sum(x_u * q^(r-u)); listing columns by ascending lex index gives
the candidate order of the forward greedy scan, and descending gives the
inverse order.  rank() maps a column to its dense 0-based position in the
ascending list, which the coverage engine uses as a bitmap address.
"""

from __future__ import annotations

from typing import Iterator, Literal

import numpy as np

from .gf import FieldSpec

ColumnOrder = Literal["lex", "invlex"]


class ZeroVector(ValueError):
    pass


def n_points(q: int, r: int) -> int:
    """Number of points of PG(r-1, q)."""
    return (q**r - 1) // (q - 1)


def _weights(q: int, r: int) -> np.ndarray:
    return q ** np.arange(r - 1, -1, -1, dtype=np.int64)


def _lead_pows(q: int, r: int) -> np.ndarray:
    # q^(r-1-t) for leading position t (0-based)
    return q ** np.arange(r - 1, -1, -1, dtype=np.int64)


def _offsets(q: int, r: int) -> np.ndarray:
    # rank of the first column whose leading 1 sits at position t
    return (_lead_pows(q, r) - 1) // (q - 1)


def normalize(v, f: FieldSpec) -> np.ndarray:
    """Scale v so its leftmost nonzero coordinate becomes 1."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        raise ZeroVector("cannot normalize the zero vector")
    lead = int(v[nz[0]])
    if lead == 1:
        return v.copy()
    return f.vmul(v, np.int64(f.inv(lead)))


def normalize_block(a: np.ndarray, f: FieldSpec) -> np.ndarray:
    """Normalize each row of a (..., r) label array.  Rows must be nonzero."""
    t = (a != 0).argmax(axis=-1)
    lead = np.take_along_axis(a, t[..., None], axis=-1)[..., 0]
    return f.vmul(a, f.vinv(lead)[..., None])


def lex_index(c, f: FieldSpec) -> int:
    c = np.asarray(c, dtype=np.int64)
    return int(c @ _weights(f.q, c.shape[-1]))


def invlex_index(c, f: FieldSpec) -> int:
    """Sort key of the inverse order; may be negative, never used as an index."""
    c = np.asarray(c, dtype=np.int64)
    return n_points(f.q, c.shape[-1]) - lex_index(c, f)


def rank(c, f: FieldSpec, r: int | None = None) -> int:
    c = np.asarray(c, dtype=np.int64)
    if r is None:
        r = c.shape[-1]
    return int(rank_block(c[None, :], f, r)[0])


def rank_block(a: np.ndarray, f: FieldSpec, r: int) -> np.ndarray:
    """Dense 0-based ascending-lex position for each normalized row of a."""
    q = f.q
    lex = a @ _weights(q, r)
    t = (a != 0).argmax(axis=-1)
    pows = _lead_pows(q, r)
    return lex - pows[t] + _offsets(q, r)[t]


def unrank(k: int, f: FieldSpec, r: int) -> np.ndarray:
    return unrank_block(np.asarray([k], dtype=np.int64), f, r)[0]


def unrank_block(k: np.ndarray, f: FieldSpec, r: int) -> np.ndarray:
    """Inverse of rank_block: columns for an array of dense positions."""
    q = f.q
    k = np.asarray(k, dtype=np.int64)
    offs = _offsets(q, r)  # decreasing in t
    t = r - 1 - (np.searchsorted(offs[::-1], k, side="right") - 1)
    tail = k - offs[t]
    # tail < q^(r-1-t), so its base-q digits vanish at positions <= t
    out = (tail[..., None] // _lead_pows(q, r)) % q
    np.put_along_axis(out, t[..., None], 1, axis=-1)
    return out


def iterate_columns(
    f: FieldSpec, r: int, order: ColumnOrder = "lex", chunk: int = 1 << 14
) -> Iterator[np.ndarray]:
    """Yield every normalized column once, in the requested scan order."""
    total = n_points(f.q, r)
    if order == "lex":
        ks = range(0, total)
    elif order == "invlex":
        ks = range(total - 1, -1, -1)
    else:
        raise ValueError(f"unknown column order {order!r}")
    buf: list[int] = []
    for k in ks:
        buf.append(k)
        if len(buf) == chunk:
            yield from unrank_block(np.asarray(buf, dtype=np.int64), f, r)
            buf.clear()
    if buf:
        yield from unrank_block(np.asarray(buf, dtype=np.int64), f, r)
