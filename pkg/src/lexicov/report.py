"""Bound coefficients, lexi-bound predicates, the best-known-length
registry, and table/plot-data emission.

Lengths of the r=4 and r=5 codes are compared against the asymptotic-style
upper bounds c * (ln q)^{1/3} * q^{(r-3)/3}: the main constants are 2.8
(r=4) and 3 (r=5), with refined constants on restricted q-ranges.  The
registry keeps the shortest verified length per (q, r, R), merging results
from the different algorithms.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from typing import Iterable


class UnsupportedShape(ValueError):
    pass


class ConflictingRecord(ValueError):
    pass


class MissingRange(ValueError):
    pass


MAIN_CONSTANT = {4: 2.8, 5: 3.0}
# refined constants of the bound theorem, as (constant, q_lo, q_hi)
REFINED_CONSTANTS = {
    4: ((2.61, 13, 4373), (2.66, 4374, 6361)),
    5: ((2.785, 11, 401), (2.884, 402, 797)),
}
# q-range of the main bound statement per r
MAIN_RANGE = {4: (11, 6361), 5: (37, 797)}


@dataclass
class CodeRecord:
    q: int
    r: int
    R: int
    n: int
    d: int | None = None
    algorithm: str = "imported"
    seed: int | None = None
    polynomial: str | None = None
    verified: bool = False


@dataclass
class BoundCoefficients:
    c: float
    delta: float
    delta_pct: float
    bound: float
    in_range: bool


def bound_value(q: int, r: int, constant: float | None = None) -> float:
    """constant * (ln q)^{1/3} * q^{(r-3)/3}."""
    if r not in MAIN_CONSTANT:
        raise UnsupportedShape(f"bounds are defined for r in {{4, 5}}, got r={r}")
    c = MAIN_CONSTANT[r] if constant is None else constant
    return c * math.log(q) ** (1 / 3) * q ** ((r - 3) / 3)


def coefficient(record: CodeRecord) -> BoundCoefficients:
    """c with n = c (ln q)^{1/3} q^{(r-3)/3}, plus delta and delta%."""
    if record.r not in MAIN_CONSTANT or record.R != 3:
        raise UnsupportedShape(f"(r, R) = ({record.r}, {record.R}) not supported")
    q, r, n = record.q, record.r, record.n
    kernel = math.log(q) ** (1 / 3) * q ** ((r - 3) / 3)
    c = n / kernel
    const = MAIN_CONSTANT[r]
    bound = const * kernel
    delta = bound - n
    delta_pct = (1 - c / const) * 100.0
    lo, hi = MAIN_RANGE[r]
    return BoundCoefficients(
        c=c, delta=delta, delta_pct=delta_pct, bound=bound, in_range=lo <= q <= hi
    )


def lexi_bound_check(record: CodeRecord) -> bool:
    """True iff n beats the main-constant bound (2.8 for r=4, 3 for r=5)."""
    return record.n < coefficient(record).bound


def refined_bound_checks(record: CodeRecord) -> dict[float, bool]:
    """n vs the refined constants, evaluated on their q-ranges only; these
    apply to best-known lengths rather than any single algorithm's output."""
    out: dict[float, bool] = {}
    for const, lo, hi in REFINED_CONSTANTS[record.r]:
        if lo <= record.q <= hi:
            out[const] = record.n < bound_value(record.q, record.r, const)
    return out


class Registry:
    """Best-known lengths per (q, r, R), min-merged across algorithms.

    merge() is idempotent and order-independent; an optional append-only
    CSV journal records every accepted record.
    """

    def __init__(self, journal_path: str | None = None):
        self._best: dict[tuple[int, int, int], CodeRecord] = {}
        self._best_d: dict[tuple[int, int, int, int], CodeRecord] = {}
        self._seen_verified: dict[tuple[int, int, int, int], bool] = {}
        self._journal_path = journal_path

    def merge(self, records: Iterable[CodeRecord]) -> None:
        for rec in sorted(records, key=_record_sort_key):
            self._merge_one(rec)

    def _merge_one(self, rec: CodeRecord) -> None:
        key = (rec.q, rec.r, rec.R)
        nkey = (rec.q, rec.r, rec.R, rec.n)
        prior = self._seen_verified.get(nkey)
        if prior is not None and prior != rec.verified:
            raise ConflictingRecord(
                f"records for q={rec.q}, r={rec.r}, R={rec.R}, n={rec.n} "
                f"disagree on verification"
            )
        self._seen_verified[nkey] = rec.verified
        cur = self._best.get(key)
        if cur is None or rec.n < cur.n or (rec.n == cur.n and _record_sort_key(rec) < _record_sort_key(cur)):
            self._best[key] = rec
        if rec.d is not None:
            dkey = (rec.q, rec.r, rec.R, rec.d)
            curd = self._best_d.get(dkey)
            if curd is None or rec.n < curd.n or (rec.n == curd.n and _record_sort_key(rec) < _record_sort_key(curd)):
                self._best_d[dkey] = rec
        if self._journal_path:
            self._append_journal(rec)

    def best(self, q: int, r: int, R: int, d: int | None = None) -> CodeRecord | None:
        if d is None:
            return self._best.get((q, r, R))
        return self._best_d.get((q, r, R, d))

    def records(self) -> list[CodeRecord]:
        return [self._best[k] for k in sorted(self._best)]

    def _append_journal(self, rec: CodeRecord) -> None:
        new = not os.path.exists(self._journal_path)
        with open(self._journal_path, "a", newline="") as fh:
            w = csv.writer(fh)
            if new:
                w.writerow(CSV_FIELDS)
            w.writerow(record_csv_row(rec))


def _record_sort_key(rec: CodeRecord):
    return (
        rec.q, rec.r, rec.R, rec.n,
        rec.algorithm, rec.d if rec.d is not None else -1,
        rec.seed if rec.seed is not None else -1,
    )


def _same_provenance(a: CodeRecord, b: CodeRecord) -> bool:
    return (a.algorithm, a.seed, a.polynomial) == (b.algorithm, b.seed, b.polynomial)


def merge_best_known(records: Iterable[CodeRecord]) -> Registry:
    reg = Registry()
    reg.merge(records)
    return reg


CSV_FIELDS = ["q", "r", "R", "n", "d", "algo", "seed", "poly",
              "coeff", "delta", "delta_pct", "bound_ok", "verified"]


def record_csv_row(rec: CodeRecord) -> list:
    try:
        bc = coefficient(rec)
        coeff, delta, dpct = f"{bc.c:.9f}", f"{bc.delta:.9f}", f"{bc.delta_pct:.9f}"
        bound_ok = int(lexi_bound_check(rec))
    except UnsupportedShape:
        coeff = delta = dpct = ""
        bound_ok = ""
    return [
        rec.q, rec.r, rec.R, rec.n,
        "" if rec.d is None else rec.d,
        rec.algorithm,
        "" if rec.seed is None else rec.seed,
        rec.polynomial or "",
        coeff, delta, dpct, bound_ok, int(rec.verified),
    ]


TABLE_SHAPES = {
    "table1": {"r": 4, "algos": ("lexi",)},
    "table2": {"r": 5, "algos": ("lexi",)},
    "table3": {"r": 4, "algos": ("invlexi",), "flag_better": "lexi"},
    "table4": {"r": 4, "algos": None},  # min-merged
    "table5": {"r": 5, "algos": None},
}


def emit_table(registry: Registry, shape: str, path: str,
               lexi_registry: Registry | None = None) -> None:
    """Write (q, n) CSV rows ascending in q for the requested table shape.

    table3 adds a better_than_lexi column; lexi_registry supplies the
    leximatrix lengths it is compared against.
    """
    if shape not in TABLE_SHAPES:
        raise ValueError(f"unknown table shape {shape!r}")
    spec = TABLE_SHAPES[shape]
    rows = []
    for rec in registry.records():
        if rec.r != spec["r"] or rec.R != 3:
            continue
        if spec["algos"] is not None and rec.algorithm not in spec["algos"]:
            continue
        rows.append(rec)
    if not rows:
        raise MissingRange(f"registry holds no rows for {shape}")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if "flag_better" in spec:
            w.writerow(["q", "n", "better_than_lexi"])
            for rec in rows:
                ref = lexi_registry.best(rec.q, rec.r, 3) if lexi_registry else None
                flag = int(ref is not None and rec.n < ref.n)
                w.writerow([rec.q, rec.n, flag])
        else:
            w.writerow(["q", "n"])
            for rec in rows:
                w.writerow([rec.q, rec.n])


PLOT_FIGURES = ("sizes", "delta", "delta_pct", "coeff")


def emit_plot_data(registry: Registry, figure: str, r: int, path: str) -> None:
    """Whitespace-separated columns (q, n, bound, delta, delta_pct, c) so a
    plotting tool can reproduce the length/bound curves."""
    if figure not in PLOT_FIGURES:
        raise ValueError(f"unknown figure {figure!r}")
    rows = [rec for rec in registry.records() if rec.r == r and rec.R == 3]
    if not rows:
        raise MissingRange(f"registry holds no r={r} rows")
    with open(path, "w") as fh:
        fh.write("# q n bound delta delta_pct c\n")
        for rec in rows:
            bc = coefficient(rec)
            fh.write(
                f"{rec.q} {rec.n} {bc.bound:.9f} {bc.delta:.9f} "
                f"{bc.delta_pct:.9f} {bc.c:.9f}\n"
            )
