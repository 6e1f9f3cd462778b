"""Bound coefficients, the best-known registry, table and plot emission."""

import csv
import math

import pytest

from lexicov import report
from lexicov.report import (
    BoundCoefficients,
    CodeRecord,
    ConflictingRecord,
    MissingRange,
    Registry,
    UnsupportedShape,
    bound_value,
    coefficient,
    lexi_bound_check,
    merge_best_known,
    refined_bound_checks,
)


def rec(q, n, r=4, **kw):
    kw.setdefault("algorithm", "lexi")
    return CodeRecord(q=q, r=r, R=3, n=n, **kw)


def test_bound_value_formulas():
    # 2.8 (q ln q)^{1/3} for r=4 and 3 (q^2 ln q)^{1/3} for r=5
    q = 37
    assert bound_value(q, 4) == pytest.approx(2.8 * (q * math.log(q)) ** (1 / 3))
    assert bound_value(q, 5) == pytest.approx(3.0 * (q * q * math.log(q)) ** (1 / 3))
    with pytest.raises(UnsupportedShape):
        bound_value(q, 3)


def test_coefficient_and_delta_identity():
    bc = coefficient(rec(11, 8))
    assert isinstance(bc, BoundCoefficients)
    assert bc.c == pytest.approx(8 / (math.log(11) ** (1 / 3) * 11 ** (1 / 3)))
    # the two delta% formulations agree
    assert bc.delta_pct == pytest.approx((bc.bound - 8) / bc.bound * 100, abs=1e-9)
    assert bc.in_range


def test_lexi_bound_check():
    assert lexi_bound_check(rec(199, 26))
    assert not lexi_bound_check(rec(11, 99))


def test_refined_checks_respect_ranges():
    out = refined_bound_checks(rec(11, 8))
    assert set(out) == set()  # 11 < 13, outside both refined r=4 ranges
    out = refined_bound_checks(rec(199, 26))
    assert set(out) == {2.61}


def test_registry_min_merge_is_order_independent():
    a = rec(11, 9, algorithm="lexi", verified=True)
    b = rec(11, 8, algorithm="invlexi", verified=True)
    c = rec(11, 8, algorithm="d-rand-greedy", seed=3, verified=True)
    for order in ([a, b, c], [c, b, a], [b, a, c]):
        reg = merge_best_known(order)
        best = reg.best(11, 4, 3)
        assert best.n == 8
        # deterministic tie-break between the two n=8 records
        assert best.algorithm == "d-rand-greedy"


def test_registry_merge_idempotent():
    reg = Registry()
    rows = [rec(11, 9, verified=True), rec(13, 9, verified=True)]
    reg.merge(rows)
    reg.merge(rows)
    assert [r.q for r in reg.records()] == [11, 13]


def test_registry_conflict_detection():
    reg = Registry()
    reg.merge([rec(11, 8, verified=True)])
    with pytest.raises(ConflictingRecord):
        reg.merge([rec(11, 8, algorithm="invlexi", verified=False)])


def test_registry_best_by_distance():
    reg = merge_best_known([
        rec(11, 8, d=5, verified=True),
        rec(11, 10, d=4, algorithm="rand-greedy", verified=True),
    ])
    assert reg.best(11, 4, 3, d=5).n == 8
    assert reg.best(11, 4, 3, d=4).n == 10
    assert reg.best(11, 4, 3).n == 8


def test_registry_journal(tmp_path):
    path = tmp_path / "journal.csv"
    reg = Registry(journal_path=str(path))
    reg.merge([rec(11, 8, verified=True), rec(13, 9, verified=True)])
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == report.CSV_FIELDS
    assert len(rows) == 3


def test_emit_table_and_flag(tmp_path):
    inv = merge_best_known([rec(71, 17, algorithm="invlexi", verified=True),
                            rec(73, 18, algorithm="invlexi", verified=True)])
    lex = merge_best_known([rec(71, 18, verified=True), rec(73, 18, verified=True)])
    out = tmp_path / "t3.csv"
    report.emit_table(inv, "table3", str(out), lexi_registry=lex)
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["q", "n", "better_than_lexi"]
    assert rows[1] == ["71", "17", "1"]
    assert rows[2] == ["73", "18", "0"]


def test_emit_table_missing_range(tmp_path):
    with pytest.raises(MissingRange):
        report.emit_table(Registry(), "table1", str(tmp_path / "x.csv"))


def test_emit_plot_data(tmp_path):
    reg = merge_best_known([rec(11, 8, verified=True), rec(13, 9, verified=True)])
    out = tmp_path / "fig.dat"
    report.emit_plot_data(reg, "sizes", 4, str(out))
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# q n bound")
    assert len(lines) == 3
    q, n, bound, delta, dpct, c = lines[1].split()
    assert (q, n) == ("11", "8")
    assert float(delta) == pytest.approx(float(bound) - 8)


def test_record_csv_row_blank_for_unsupported_shape():
    row = report.record_csv_row(CodeRecord(q=5, r=3, R=3, n=7))
    assert row[8] == "" and row[11] == ""
