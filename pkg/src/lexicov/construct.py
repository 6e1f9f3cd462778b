"""Construction algorithms for radius-R covering codes.

All four algorithms grow a parity-check matrix column by column over the
points of PG(r-1, q):

* leximatrix / invleximatrix scan the points in ascending / descending lex
  order and keep every point not already R-covered by the chosen columns.
  Because pg.rank is monotone in lex order, "next point not R-covered"
  is simply the next clear bit of the coverage bitmap.
* rand_greedy / d_rand_greedy add, at every step, a candidate of maximal
  coverage gain; rand_greedy draws candidates from all points not yet in
  the matrix (so the minimum distance may drop to 3), d_rand_greedy only
  from points not yet R-covered (which forces minimum distance R+2).

stable_prefix studies how the first columns of the leximatrix stop
depending on q as q grows; for prime q and r=4 it uses a determinant
test instead of the coverage bitmap, which keeps four-digit q feasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .gf import FieldSpec
from . import pg
from .coverage import CoverageState

ALGO_LEXI = "lexi"
ALGO_INVLEXI = "invlexi"
ALGO_RAND_GREEDY = "rand-greedy"
ALGO_D_RAND_GREEDY = "d-rand-greedy"
ALGO_IMPORTED = "imported"


class InvalidStartMatrix(ValueError):
    pass


@dataclass
class Code:
    """A constructed or imported [n, n-r] code given by its parity-check
    columns (each a normalized r-vector of field labels)."""

    field: FieldSpec
    r: int
    R: int
    columns: list[np.ndarray]
    algorithm: str
    seed: int | None = None
    d: int | None = None

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def k(self) -> int:
        return self.n - self.r

    def column_array(self) -> np.ndarray:
        return np.stack(self.columns) if self.columns else np.empty((0, self.r), np.int64)


@dataclass
class GreedyConfig:
    """Search budget of the randomized algorithms.

    pool_size None means every step evaluates all eligible candidates;
    otherwise each step draws pool_size candidates at random, except that
    every full_scan_every-th step (0 disables this) still scans everything.
    """

    seed: int = 0
    attempts: int = 1
    pool_size: int | None = None
    full_scan_every: int = 10
    start_matrix: Sequence | None = None
    target_length: int | None = None

    def __post_init__(self) -> None:
        if self.attempts < 1:
            raise ValueError(f"attempts must be >= 1, got {self.attempts}")
        if self.pool_size is not None and self.pool_size < 1:
            raise ValueError(f"pool_size must be >= 1, got {self.pool_size}")
        if self.full_scan_every < 0:
            raise ValueError("full_scan_every must be >= 0")


def default_config(q: int, seed: int = 0, attempts: int = 1) -> GreedyConfig:
    """Reproducible default search budget: exhaustive candidate scans up to
    q = 100, random pools of 50 with a periodic full scan beyond."""
    if q <= 100:
        return GreedyConfig(seed=seed, attempts=attempts, pool_size=None)
    return GreedyConfig(seed=seed, attempts=attempts, pool_size=50, full_scan_every=10)


# -- deterministic scans ----------------------------------------------------


def leximatrix(f: FieldSpec, r: int, R: int) -> Code:
    """Greedy scan in ascending lex order, keeping every point not already
    R-covered."""
    st = CoverageState(f, r, R)
    k = 0
    while not st.is_complete():
        k += int(np.argmax(~st.covered[k:]))
        st.add_column(pg.unrank(k, f, r))
    return Code(field=f, r=r, R=R, columns=st.columns, algorithm=ALGO_LEXI, d=None)


def invleximatrix(f: FieldSpec, r: int, R: int) -> Code:
    """Same scan in descending lex order."""
    st = CoverageState(f, r, R)
    k = st.n_points - 1
    while not st.is_complete():
        k -= int(np.argmax(~st.covered[k::-1]))
        st.add_column(pg.unrank(k, f, r))
    return Code(field=f, r=r, R=R, columns=st.columns, algorithm=ALGO_INVLEXI, d=None)


# -- randomized greedy ------------------------------------------------------


def _start_state(f: FieldSpec, r: int, R: int, cfg: GreedyConfig) -> CoverageState:
    st = CoverageState(f, r, R)
    if cfg.start_matrix is not None:
        seen: set[int] = set()
        for c in cfg.start_matrix:
            c = np.asarray(c, dtype=np.int64)
            k = pg.rank(c, f, r)
            if not np.array_equal(c, pg.normalize(c, f)):
                raise InvalidStartMatrix(f"start column {c.tolist()} not normalized")
            if k in seen:
                raise InvalidStartMatrix(f"duplicate start column {c.tolist()}")
            seen.add(k)
            st.add_column(c)
    return st


def _greedy_attempt(
    f: FieldSpec,
    r: int,
    R: int,
    cfg: GreedyConfig,
    attempt: int,
    restrict_uncovered: bool,
    abandon_at: int | None,
) -> list[np.ndarray] | None:
    """One seeded greedy run; None if it reaches abandon_at columns without
    finishing (a longer code than the best attempt so far)."""
    rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, attempt)))
    st = _start_state(f, r, R, cfg)
    in_matrix = np.zeros(st.n_points, dtype=bool)
    for c in st.columns:
        in_matrix[pg.rank(c, f, r)] = True
    step = 0
    while not st.is_complete():
        if abandon_at is not None and len(st.columns) >= abandon_at:
            return None
        if restrict_uncovered:
            eligible = np.flatnonzero(~st.covered)
        else:
            eligible = np.flatnonzero(~in_matrix)
        full = cfg.pool_size is None or (
            cfg.full_scan_every and step % cfg.full_scan_every == 0
        )
        if full or eligible.size <= cfg.pool_size:
            pool = eligible
        else:
            pool = rng.choice(eligible, size=cfg.pool_size, replace=False)
            pool.sort()
        cands = pg.unrank_block(pool, f, r)
        gains = st.gain_block(cands)
        best = np.flatnonzero(gains == gains.max())
        pick = int(best[rng.integers(best.size)])
        st.add_column(cands[pick])
        in_matrix[pool[pick]] = True
        step += 1
    return st.columns


def _run_greedy(
    f: FieldSpec, r: int, R: int, cfg: GreedyConfig, restrict_uncovered: bool, algo: str
) -> Code:
    best: list[np.ndarray] | None = None
    for attempt in range(cfg.attempts):
        abandon = len(best) if best is not None else None
        cols = _greedy_attempt(f, r, R, cfg, attempt, restrict_uncovered, abandon)
        if cols is not None and (best is None or len(cols) < len(best)):
            best = cols
        if cfg.target_length is not None and best is not None:
            if len(best) <= cfg.target_length:
                break
    assert best is not None  # attempts >= 1 and an attempt always terminates
    d = R + 2 if restrict_uncovered else None
    return Code(field=f, r=r, R=R, columns=best, algorithm=algo, seed=cfg.seed, d=d)


def rand_greedy(f: FieldSpec, r: int, R: int, cfg: GreedyConfig) -> Code:
    """Randomized greedy over all points not yet in the matrix; the shortest
    of cfg.attempts seeded runs is returned."""
    return _run_greedy(f, r, R, cfg, restrict_uncovered=False, algo=ALGO_RAND_GREEDY)


def d_rand_greedy(f: FieldSpec, r: int, R: int, cfg: GreedyConfig) -> Code:
    """Randomized greedy restricted to points not yet R-covered, which
    guarantees minimum distance R+2."""
    return _run_greedy(f, r, R, cfg, restrict_uncovered=True, algo=ALGO_D_RAND_GREEDY)


# -- leximatrix prefixes and their stabilization ----------------------------

# First columns of the r=4, R=3 leximatrix for prime q, with the least prime
# q0 from which each column keeps this value for every larger prime tested.
TABLE_B: tuple[tuple[tuple[int, int, int, int], int], ...] = (
    ((0, 0, 0, 1), 2),
    ((0, 0, 1, 0), 2),
    ((0, 1, 0, 0), 2),
    ((1, 0, 0, 0), 2),
    ((1, 1, 1, 1), 2),
    ((1, 2, 3, 4), 5),
    ((1, 3, 2, 5), 11),
    ((1, 4, 5, 3), 29),
    ((1, 5, 4, 2), 41),
    ((1, 6, 8, 9), 41),
    ((1, 7, 11, 8), 67),
    ((1, 8, 6, 13), 109),
    ((1, 9, 13, 16), 199),
    ((1, 10, 12, 22), 233),
    ((1, 11, 7, 29), 269),
    ((1, 12, 22, 15), 769),
    ((1, 13, 16, 20), 769),
    ((1, 14, 17, 7), 1283),
    ((1, 15, 21, 10), 1283),
    ((1, 16, 9, 38), 1321),
)


def _triple_cofactors(cols: Sequence[np.ndarray], triples, p: int) -> np.ndarray:
    """For each triple (a,b,c) of column indices, the vector cof with
    det(h_a, h_b, h_c, v) = cof . v over GF(p), via cofactor expansion
    along the v column."""
    out = np.empty((len(triples), 4), dtype=np.int64)
    for t, (a, b, c) in enumerate(triples):
        m = np.stack([cols[a], cols[b], cols[c]], axis=1)  # 4x3, exact ints
        for u in range(4):
            minor = np.delete(m, u, axis=0)
            det = (
                minor[0, 0] * (minor[1, 1] * minor[2, 2] - minor[1, 2] * minor[2, 1])
                - minor[0, 1] * (minor[1, 0] * minor[2, 2] - minor[1, 2] * minor[2, 0])
                + minor[0, 2] * (minor[1, 0] * minor[2, 1] - minor[1, 1] * minor[2, 0])
            )
            out[t, u] = (det if u % 2 else -det) % p
    return out


def _prefix_prime_r4(f: FieldSpec, k: int) -> list[np.ndarray]:
    """First k leximatrix columns for prime q, r=4, without a bitmap.

    While every 4 chosen columns are independent (true throughout the
    leximatrix prefix), a candidate v is R-covered exactly when some column
    triple satisfies det(h_a, h_b, h_c, v) = 0.  Candidates with a leading
    zero are handled first (they are exhausted after three columns); the
    leading-1 candidates (1, x, y, z) are then scanned per (x, y) pane by
    solving each triple's equation for z.
    """
    q = f.p

    # The leading-zero candidates come first in lex order and their
    # combinations stay leading-zero, so that phase is exactly the r=3
    # leximatrix on the tail coordinates (it completes with 3 columns).
    head = leximatrix_prefix(f, 3, 3, k)
    cols = [np.concatenate(([0], c)) for c in head]
    if len(cols) >= k:
        return cols[:k]

    assert len(cols) == 3
    triples = [(0, 1, 2)]
    cofs = _triple_cofactors(cols, triples, q)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [pow(a, q - 2, q) for a in range(1, q)]

    x, start_flat = 0, 0  # resume position inside the current x-batch
    while len(cols) < k and x < q:
        # coverage of all candidates (1, x, y, z) for the current x
        c0, c1, c2, c3 = cofs.T
        s = (c0 + c1 * x) % q
        s2 = (s[:, None] + np.outer(c2, np.arange(q))) % q  # (T, q) over y
        covered = np.zeros(q * q, dtype=bool)  # flat index y*q + z
        nz = c3 != 0
        if nz.any():
            z = (-s2[nz] * inv[c3[nz]][:, None]) % q  # (Tnz, q)
            covered[(np.arange(q)[None, :] * q + z).ravel()] = True
        if (~nz).any():
            dead_y = np.flatnonzero((s2[~nz] == 0).any(axis=0))
            covered.reshape(q, q)[dead_y, :] = True
        open_flat = np.flatnonzero(~covered[start_flat:])
        if open_flat.size == 0:
            x += 1
            start_flat = 0
            continue
        flat = start_flat + int(open_flat[0])
        y, z = divmod(flat, q)
        new = np.asarray([1, x, y, z], dtype=np.int64)
        n = len(cols)
        cols.append(new)
        fresh = [(i, j, n) for i in range(n) for j in range(i + 1, n)]
        triples.extend(fresh)
        cofs = np.concatenate([cofs, _triple_cofactors(cols, fresh, q)], axis=0)
        start_flat = flat + 1  # rescan the rest of this pane with the new column
    return cols


def leximatrix_prefix(f: FieldSpec, r: int, R: int, k: int) -> list[np.ndarray]:
    """First k columns of the leximatrix (the full run stopped early)."""
    if r == 4 and R == 3 and f.m == 1:
        return _prefix_prime_r4(f, k)
    st = CoverageState(f, r, R)
    pos = 0
    while len(st.columns) < k and not st.is_complete():
        pos += int(np.argmax(~st.covered[pos:]))
        st.add_column(pg.unrank(pos, f, r))
    return st.columns


@dataclass
class StablePrefixRow:
    v: int
    column: tuple[int, ...]
    q0_estimate: int
    matches_reference: bool


def stable_prefix(r: int, R: int, k: int, primes: Sequence[int]) -> list[StablePrefixRow]:
    """Track how the first k leximatrix columns stabilize across primes.

    For each position v, reports the column obtained at the largest tested
    prime, the least tested prime from which every larger tested prime
    already agrees with it, and whether that matches the shipped reference
    prefix (r=4 only, v <= 20).
    """
    from .gf import make_field

    primes = sorted(primes)
    runs = {q: leximatrix_prefix(make_field(q), r, R, k) for q in primes}
    rows = []
    for v in range(1, k + 1):
        # small primes may finish the whole leximatrix before position v
        avail = [q for q in primes if len(runs[q]) >= v]
        if not avail:
            break
        final = tuple(int(t) for t in runs[avail[-1]][v - 1])
        q0 = avail[-1]
        for q in reversed(avail):
            if tuple(int(t) for t in runs[q][v - 1]) != final:
                break
            q0 = q
        match = True
        if r == 4 and R == 3 and v <= len(TABLE_B):
            ref_col, ref_q0 = TABLE_B[v - 1]
            match = final == ref_col and q0 <= max(ref_q0, primes[0])
        rows.append(StablePrefixRow(v=v, column=final, q0_estimate=q0, matches_reference=match))
    return rows
