"""Construction algorithms: deterministic scans, greedy search, prefixes."""

import numpy as np
import pytest

from lexicov import construct, gf, pg
from lexicov.construct import (
    GreedyConfig,
    InvalidStartMatrix,
    TABLE_B,
    d_rand_greedy,
    invleximatrix,
    leximatrix,
    leximatrix_prefix,
    rand_greedy,
    stable_prefix,
)


def _field(q):
    return gf.field_for_order(q)


@pytest.mark.parametrize("q,n", [(2, 5), (3, 5), (4, 5), (5, 6), (7, 8), (8, 7)])
def test_leximatrix_r4_small(q, n):
    code = leximatrix(_field(q), 4, 3)
    assert code.n == n
    assert code.algorithm == "lexi"
    assert code.k == n - 4


@pytest.mark.parametrize("q,n", [(3, 11), (4, 10), (5, 11)])
def test_leximatrix_r5_small(q, n):
    assert leximatrix(_field(q), 5, 3).n == n


@pytest.mark.parametrize("q,n", [(7, 8), (11, 8), (19, 10)])
def test_invleximatrix_small(q, n):
    code = invleximatrix(_field(q), 4, 3)
    assert code.n == n
    assert code.algorithm == "invlexi"


def test_leximatrix_columns_are_lex_increasing(f7):
    code = leximatrix(f7, 4, 3)
    ranks = [pg.rank(c, f7, 4) for c in code.columns]
    assert ranks == sorted(ranks)


def test_invleximatrix_columns_are_lex_decreasing(f7):
    code = invleximatrix(f7, 4, 3)
    ranks = [pg.rank(c, f7, 4) for c in code.columns]
    assert ranks == sorted(ranks, reverse=True)


@pytest.mark.parametrize("q", [11, 13, 17])
def test_prime_prefix_scanner_matches_engine(q):
    f = _field(q)
    fast = construct._prefix_prime_r4(f, 8)
    # generic bitmap engine as the reference
    from lexicov.coverage import CoverageState
    st = CoverageState(f, 4, 3)
    pos = 0
    while len(st.columns) < 8:
        pos += int(np.argmax(~st.covered[pos:]))
        st.add_column(pg.unrank(pos, f, 4))
    assert [c.tolist() for c in fast] == [c.tolist() for c in st.columns]


def test_prefix_is_prefix_of_full_run(f13):
    code = leximatrix(f13, 4, 3)
    pref = leximatrix_prefix(f13, 4, 3, 6)
    assert [c.tolist() for c in pref] == [c.tolist() for c in code.columns[:6]]


def test_greedy_deterministic_for_fixed_seed(f7):
    cfg = GreedyConfig(seed=5, attempts=3)
    a = d_rand_greedy(f7, 4, 3, cfg)
    b = d_rand_greedy(f7, 4, 3, cfg)
    assert [c.tolist() for c in a.columns] == [c.tolist() for c in b.columns]
    assert a.seed == 5


def test_d_rand_greedy_advertises_distance(f5):
    code = d_rand_greedy(f5, 4, 3, GreedyConfig(seed=0))
    assert code.d == 5
    assert code.algorithm == "d-rand-greedy"
    code = rand_greedy(f5, 4, 3, GreedyConfig(seed=0))
    assert code.d is None
    assert code.algorithm == "rand-greedy"


def test_greedy_attempts_never_lengthen(f7):
    one = d_rand_greedy(f7, 4, 3, GreedyConfig(seed=1, attempts=1))
    many = d_rand_greedy(f7, 4, 3, GreedyConfig(seed=1, attempts=8))
    assert many.n <= one.n


def test_start_matrix_prefix_respected(f5):
    start = [pg.unrank(k, f5, 4).tolist() for k in (0, 1, 2)]
    cfg = GreedyConfig(seed=0, start_matrix=start)
    code = d_rand_greedy(f5, 4, 3, cfg)
    assert [c.tolist() for c in code.columns[:3]] == start


def test_start_matrix_validation(f5):
    with pytest.raises(InvalidStartMatrix):
        d_rand_greedy(f5, 4, 3, GreedyConfig(start_matrix=[[0, 0, 0, 2]]))
    with pytest.raises(InvalidStartMatrix):
        d_rand_greedy(
            f5, 4, 3, GreedyConfig(start_matrix=[[0, 0, 0, 1], [0, 0, 0, 1]]))


def test_greedy_config_validation():
    with pytest.raises(ValueError):
        GreedyConfig(attempts=0)
    with pytest.raises(ValueError):
        GreedyConfig(pool_size=0)
    with pytest.raises(ValueError):
        GreedyConfig(full_scan_every=-1)


def test_stable_prefix_matches_reference_rows():
    rows = stable_prefix(4, 3, 7, primes=[2, 3, 5, 7, 11, 13])
    assert len(rows) == 7
    for row in rows:
        assert row.matches_reference
        assert row.column == TABLE_B[row.v - 1][0]
