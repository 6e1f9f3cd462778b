"""Incremental tracking of R-covered projective points.

A point is R-covered by a set of columns if it equals a linear combination
of at most R of them.  The engine keeps a bitmap over all points of
PG(r-1, q), addressed by pg.rank, and updates it incrementally: when a
column c is appended, only combinations that involve c need to be
enumerated (c alone, c with one earlier column, c with two earlier
columns), with the coefficient on c normalized to 1 since coverage is a
projective property.  This turns a full recomputation into an O(n^2 q^2)
update and is what makes the large-q scans feasible.

brute_force_covered is the deliberately naive reference implementation used
by tests and full verification.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from .gf import FieldSpec
from . import pg

# elementwise budget per chunk of combination rows
_CHUNK_ELEMS = 1 << 22


class UnsupportedRadius(ValueError):
    pass


class DuplicateColumn(ValueError):
    pass


class CoverageState:
    """Mutable coverage bitmap for a growing parity-check matrix.

    One writer: add_column must not run concurrently.  gain/gain_block are
    read-only and may be evaluated for many candidates against a frozen
    state.
    """

    def __init__(self, f: FieldSpec, r: int, radius: int):
        if r < 2:
            raise ValueError(f"codimension must be >= 2, got {r}")
        if radius not in (1, 2, 3):
            raise UnsupportedRadius(f"radius {radius} not supported (R <= 3)")
        self.field = f
        self.r = r
        self.radius = radius
        self.n_points = pg.n_points(f.q, r)
        self.covered = np.zeros(self.n_points, dtype=bool)
        self.covered_count = 0
        self.columns: list[np.ndarray] = []
        self._ranks: set[int] = set()
        # per column: its q-1 nonzero scalar multiples, shape (q-1, r)
        self._scaled: list[np.ndarray] = []
        self._combo_cache: np.ndarray | None = None

    # -- internals ---------------------------------------------------------

    def _scalar_multiples(self, c: np.ndarray) -> np.ndarray:
        f = self.field
        scalars = np.arange(1, f.q, dtype=np.int64)
        return f.vmul(scalars[:, None], c[None, :])

    def _mark(self, ranks: np.ndarray) -> None:
        self.covered[ranks] = True

    def _new_combo_ranks(self, c: np.ndarray):
        """Yield rank arrays of every point whose coverage can change when c
        joins the matrix: c itself, then c plus scaled earlier columns
        (one, and for R=3 two, with nonzero scalars)."""
        f = self.field
        r = self.r
        yield np.asarray([pg.rank(c, f, r)], dtype=np.int64)
        if self.radius == 1 or not self._scaled:
            return
        scaled = self._scaled
        # pairs {c, h_i}
        for i in range(0, len(scaled), 64):
            block = np.concatenate(scaled[i : i + 64], axis=0)
            pts = pg.normalize_block(f.vadd(c[None, :], block), f)
            yield pg.rank_block(pts, f, r)
        if self.radius == 2:
            return
        # triples {c, h_i, h_j}, i < j
        qm1 = f.q - 1
        max_rows = max(1, _CHUNK_ELEMS // (qm1 * r))
        for i in range(1, len(scaled)):
            ci = f.vadd(c[None, :], scaled[i])  # (q-1, r)
            prev = scaled[:i]
            flat = np.concatenate(prev, axis=0) if len(prev) > 1 else prev[0]
            for j0 in range(0, flat.shape[0], max_rows):
                part = flat[j0 : j0 + max_rows]
                combos = f.vadd(ci[:, None, :], part[None, :, :]).reshape(-1, r)
                combos = combos[combos.any(axis=-1)]  # drop cancellations
                if combos.size:
                    pts = pg.normalize_block(combos, f)
                    yield pg.rank_block(pts, f, r)

    # -- public API --------------------------------------------------------

    def add_column(self, c) -> int:
        """Append column c; returns the number of newly covered points."""
        f = self.field
        c = np.asarray(c, dtype=np.int64)
        ck = pg.rank(c, f, self.r)
        if ck in self._ranks:
            raise DuplicateColumn(f"column {c.tolist()} already in the matrix")
        before = self.covered_count
        for ranks in self._new_combo_ranks(c):
            self._mark(ranks)
        self.columns.append(c)
        self._ranks.add(ck)
        self._scaled.append(self._scalar_multiples(c))
        self._combo_cache = None
        self.covered_count = int(np.count_nonzero(self.covered))
        return self.covered_count - before

    def gain(self, candidate) -> int:
        """Newly covered count add_column(candidate) would report; pure."""
        f = self.field
        c = np.asarray(candidate, dtype=np.int64)
        if pg.rank(c, f, self.r) in self._ranks:
            raise DuplicateColumn(f"column {c.tolist()} already in the matrix")
        ranks = np.unique(np.concatenate(list(self._new_combo_ranks(c))))
        return int(np.count_nonzero(~self.covered[ranks]))

    def _combo_offsets(self) -> np.ndarray:
        """All vectors expressible with <= R-1 current columns, zero included.

        Adding a candidate to each row gives every combination the candidate
        participates in; cached between add_column calls.
        """
        if self._combo_cache is None:
            f, r = self.field, self.r
            parts = [np.zeros((1, r), dtype=np.int64)]
            if self.radius >= 2:
                parts.extend(self._scaled)
            if self.radius >= 3:
                for i in range(1, len(self._scaled)):
                    si = self._scaled[i]
                    for j in range(i):
                        pair = f.vadd(si[:, None, :], self._scaled[j][None, :, :])
                        parts.append(pair.reshape(-1, r))
            self._combo_cache = np.concatenate(parts, axis=0)
        return self._combo_cache

    def gain_block(self, candidates: np.ndarray) -> np.ndarray:
        """gain() for many candidate columns at once, shape (M, r) -> (M,)."""
        f, r = self.field, self.r
        cands = np.asarray(candidates, dtype=np.int64)
        offs = self._combo_offsets()
        m = cands.shape[0]
        width = offs.shape[0]
        out = np.empty(m, dtype=np.int64)
        step = max(1, _CHUNK_ELEMS // (width * r))
        for i0 in range(0, m, step):
            part = cands[i0 : i0 + step]
            combos = f.vadd(part[:, None, :], offs[None, :, :])
            zero = ~combos.any(axis=-1)
            if zero.any():
                # cancelled combinations cover nothing; park them at rank -1
                combos[zero, 0] = 1
            pts = pg.normalize_block(combos, f)
            ranks = pg.rank_block(pts, f, r)
            ranks[zero] = -1
            ranks = np.sort(ranks, axis=1)
            fresh = (ranks >= 0) & ~self.covered[ranks]
            fresh[:, 1:] &= ranks[:, 1:] != ranks[:, :-1]
            out[i0 : i0 + step] = fresh.sum(axis=1)
        return out

    def is_complete(self) -> bool:
        return self.covered_count == self.n_points


def brute_force_covered(columns, f: FieldSpec, r: int, radius: int) -> np.ndarray:
    """Reference coverage bitmap: enumerate every subset of size <= radius
    and every scalar combination with nonzero coefficients (first coefficient
    1, which is enough projectively).  Test/verification use only.
    """
    covered = np.zeros(pg.n_points(f.q, r), dtype=bool)
    cols = [np.asarray(c, dtype=np.int64) for c in columns]
    nz = range(1, f.q)
    for k in range(1, radius + 1):
        for subset in combinations(cols, k):
            for coeffs in product(*([nz] * (k - 1))):
                v = subset[0].copy()
                for c, b in zip(subset[1:], coeffs):
                    v = f.vadd(v, f.vmul(np.int64(b), c))
                if not v.any():
                    continue
                covered[pg.rank(pg.normalize(v, f), f, r)] = True
    return covered
