"""Incremental coverage engine vs the brute-force oracle."""

import numpy as np
import pytest

from lexicov import gf, pg
from lexicov.coverage import (
    CoverageState,
    DuplicateColumn,
    UnsupportedRadius,
    brute_force_covered,
)


def _field(q):
    return gf.field_for_order(q)


@pytest.mark.parametrize("q,r,radius", [
    (2, 4, 3), (3, 4, 3), (4, 4, 3), (5, 4, 3),
    (3, 5, 3), (4, 5, 3), (3, 4, 2), (5, 3, 1), (5, 3, 2),
])
def test_incremental_matches_brute_force_random_insertions(q, r, radius):
    f = _field(q)
    n = pg.n_points(q, r)
    rng = np.random.default_rng(7)
    picks = rng.permutation(n)[: min(n, 12)]
    st = CoverageState(f, r, radius)
    cols = []
    for k in picks:
        c = pg.unrank(int(k), f, r)
        st.add_column(c)
        cols.append(c)
        oracle = brute_force_covered(cols, f, r, radius)
        assert np.array_equal(st.covered, oracle)
        assert st.covered_count == int(oracle.sum())


def test_gain_equals_coverage_delta(f5):
    r, radius = 4, 3
    rng = np.random.default_rng(3)
    st = CoverageState(f5, r, radius)
    n = pg.n_points(5, r)
    chosen = [int(k) for k in rng.permutation(n)[:5]]
    for k in chosen:
        st.add_column(pg.unrank(k, f5, r))
    cands = pg.unrank_block(
        np.asarray([k for k in range(0, n, 17) if k not in chosen]), f5, r)
    gains = st.gain_block(cands)
    for c, g in zip(cands, gains):
        probe = CoverageState(f5, r, radius)
        for k in chosen:
            probe.add_column(pg.unrank(k, f5, r))
        before = probe.covered_count
        probe.add_column(c)
        assert probe.covered_count - before == g
        assert st.gain(c) == g


def test_duplicate_column_rejected(f3):
    st = CoverageState(f3, 4, 3)
    c = pg.unrank(0, f3, 4)
    st.add_column(c)
    with pytest.raises(DuplicateColumn):
        st.add_column(c)


def test_unsupported_radius(f3):
    with pytest.raises(UnsupportedRadius):
        CoverageState(f3, 4, 4)


def test_is_complete(f2):
    st = CoverageState(f2, 3, 1)
    for c in pg.iterate_columns(f2, 3):
        st.add_column(c)
    assert st.is_complete()
    assert st.covered.all()
