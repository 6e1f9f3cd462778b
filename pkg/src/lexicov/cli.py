"""Command-line interface: construct, verify, sweep, report.

Matrix file format: line 1 is the header `q r R n d` (d may be `-` when
unknown); an optional `# poly: c0 c1 ...` comment records the primitive
polynomial for non-prime q (constant term first); then n lines of r
space-separated integer labels, one column per line.

Exit codes: 0 success, 1 domain failure (verification failed, field
errors), 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import construct, gf, pg, report, verify
from .construct import Code, GreedyConfig
from .gf import FieldError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class MalformedHeader(ValueError):
    pass


class ColumnOutOfField(ValueError):
    pass


class DuplicateColumnInFile(ValueError):
    pass


class VerificationFailure(RuntimeError):
    pass


# -- matrix files -----------------------------------------------------------


def write_matrix_file(code: Code, path: str) -> None:
    with open(path, "w") as fh:
        d = "-" if code.d is None else str(code.d)
        fh.write(f"{code.field.q} {code.r} {code.R} {code.n} {d}\n")
        if code.field.poly is not None:
            fh.write(f"# poly: {gf.format_poly(code.field.poly)}\n")
        for c in code.columns:
            fh.write(" ".join(str(int(x)) for x in c) + "\n")


def parse_matrix_file(path: str) -> Code:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines:
        raise MalformedHeader(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 5:
        raise MalformedHeader(f"{path}: header must be 'q r R n d', got {lines[0]!r}")
    try:
        q, r, R, n = (int(t) for t in head[:4])
    except ValueError as e:
        raise MalformedHeader(f"{path}: non-integer header field: {e}") from None
    d = None if head[4] == "-" else int(head[4])
    poly = None
    body = lines[1:]
    if body and body[0].startswith("#"):
        tag, _, rest = body[0].partition(":")
        if tag.strip() == "# poly":
            poly = gf.parse_poly(rest)
        body = body[1:]
    body = [ln for ln in body if ln.strip()]
    if len(body) != n:
        raise MalformedHeader(f"{path}: header says n={n} but {len(body)} columns follow")
    f = gf.field_for_order(q, poly)
    cols = []
    seen: set[int] = set()
    for ln in body:
        vals = [int(t) for t in ln.split()]
        if len(vals) != r:
            raise MalformedHeader(f"{path}: column {ln!r} does not have r={r} entries")
        if any(v < 0 or v >= q for v in vals):
            raise ColumnOutOfField(f"{path}: column {ln!r} has labels outside GF({q})")
        c = np.asarray(vals, dtype=np.int64)
        k = pg.rank(pg.normalize(c, f), f, r)
        if k in seen:
            raise DuplicateColumnInFile(f"{path}: column {ln!r} appears twice")
        seen.add(k)
        cols.append(c)
    return Code(field=f, r=r, R=R, columns=cols, algorithm=construct.ALGO_IMPORTED, d=d)


# -- greedy config files ----------------------------------------------------


def parse_config_file(path: str) -> dict:
    """Flat key=value lines; '#' starts a comment."""
    out: dict = {}
    with open(path) as fh:
        for ln in fh:
            ln = ln.split("#", 1)[0].strip()
            if not ln:
                continue
            key, _, val = ln.partition("=")
            out[key.strip()] = val.strip()
    return out


def build_greedy_config(q: int, args, overrides: dict | None = None) -> GreedyConfig:
    cfg = construct.default_config(q, seed=args.seed, attempts=args.attempts)
    kv = dict(overrides or {})
    if args.config:
        kv.update(parse_config_file(args.config))
    pool = kv.get("pool_size")
    full_every = kv.get("full_scan_every")
    target = kv.get("target_length")
    return GreedyConfig(
        seed=int(kv.get("seed", cfg.seed)),
        attempts=int(kv.get("attempts", cfg.attempts)),
        pool_size=cfg.pool_size if pool is None else (None if pool in ("", "full") else int(pool)),
        full_scan_every=cfg.full_scan_every if full_every is None else int(full_every),
        target_length=None if target in (None, "") else int(target),
    )


# -- construction dispatch --------------------------------------------------


def _construct_one(algo: str, q: int, r: int, R: int, poly, cfg: GreedyConfig | None) -> Code:
    f = gf.field_for_order(q, poly)
    if algo == "lexi":
        return construct.leximatrix(f, r, R)
    if algo == "invlexi":
        return construct.invleximatrix(f, r, R)
    if algo == "rand-greedy":
        return construct.rand_greedy(f, r, R, cfg)
    if algo == "d-rand-greedy":
        return construct.d_rand_greedy(f, r, R, cfg)
    raise ValueError(f"unknown algorithm {algo!r}")


def _verify_constructed(code: Code) -> report.CodeRecord:
    """Incremental verification of a freshly constructed code; a failure
    here signals an engine bug, not bad input."""
    rep = verify.verify_code(code)
    if rep.covering_radius > code.R:
        raise VerificationFailure(
            f"constructed code has covering radius {rep.covering_radius} > {code.R}"
        )
    f = code.field
    return report.CodeRecord(
        q=f.q, r=code.r, R=code.R, n=code.n,
        d=rep.min_distance if rep.min_distance_exact else None,
        algorithm=code.algorithm, seed=code.seed,
        polynomial=gf.format_poly(f.poly) if f.poly else None,
        verified=True,
    )


# -- q enumeration for sweeps ----------------------------------------------


def sweep_q_values(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi] plus the non-prime orders with shipped default
    polynomials."""
    vals = [q for q in range(max(2, lo), hi + 1)
            if gf.is_prime(q) or q in gf.DEFAULT_POLYNOMIALS]
    return vals


def _sweep_worker(job):
    algo, q, r, R, seed, attempts, config_path = job
    args = argparse.Namespace(seed=seed, attempts=attempts, config=config_path)
    cfg = None
    if algo in ("rand-greedy", "d-rand-greedy"):
        cfg = build_greedy_config(q, args)
    code = _construct_one(algo, q, r, R, None, cfg)
    rec = _verify_constructed(code)
    return q, rec


# -- subcommands ------------------------------------------------------------


def cmd_construct(args) -> int:
    poly = gf.parse_poly(args.poly) if args.poly else None
    cfg = None
    if args.algo in ("rand-greedy", "d-rand-greedy"):
        cfg = build_greedy_config(args.q, args)
    code = _construct_one(args.algo, args.q, args.r, args.R, poly, cfg)
    rec = _verify_constructed(code)
    code.d = rec.d
    write_matrix_file(code, args.output)
    print(f"wrote {args.output}: [{code.n},{code.n - code.r},{rec.d}]_{args.q} "
          f"R={args.R} ({args.algo})")
    return EXIT_OK


def cmd_verify(args) -> int:
    code = parse_matrix_file(args.matrix)
    rep = verify.verify_code(code, full=args.full)
    for line in rep.lines():
        print(line)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["q", "r", "R", "n", "covering_radius", "min_distance",
                        "density", "classification", "quasi_perfect", "method"])
            w.writerow([code.field.q, code.r, code.R, code.n,
                        rep.covering_radius,
                        rep.min_distance if rep.min_distance_exact else f">{rep.min_distance}",
                        str(rep.density), rep.classification,
                        int(rep.quasi_perfect), rep.method])
    ok = rep.covering_radius <= code.R
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_sweep(args) -> int:
    lo, sep, hi = args.q_range.partition(":")
    if not sep:
        raise SystemExit("--q-range must look like LO:HI")
    qs = sweep_q_values(int(lo), int(hi))
    jobs = [(args.algo, q, args.r, args.R, args.seed, args.attempts, args.config)
            for q in qs]
    results: dict[int, report.CodeRecord] = {}
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for q, rec in pool.map(_sweep_worker, jobs):
                results[q] = rec
    else:
        for job in jobs:
            q, rec = _sweep_worker(job)
            results[q] = rec
    # deterministic output independent of worker scheduling
    reg = report.Registry(journal_path=None)
    reg.merge(results[q] for q in sorted(results))
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(report.CSV_FIELDS)
        for rec in reg.records():
            w.writerow(report.record_csv_row(rec))
    print(f"wrote {args.output}: {len(results)} rows")
    return EXIT_OK


def cmd_report(args) -> int:
    records = []
    for path in args.csv:
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                records.append(report.CodeRecord(
                    q=int(row["q"]), r=int(row["r"]), R=int(row["R"]),
                    n=int(row["n"]),
                    d=int(row["d"]) if row.get("d") else None,
                    algorithm=row.get("algo", "imported"),
                    seed=int(row["seed"]) if row.get("seed") else None,
                    polynomial=row.get("poly") or None,
                    verified=bool(int(row.get("verified", "0") or 0)),
                ))
    if args.table:
        algos = report.TABLE_SHAPES[args.table]["algos"]
        pool = [r for r in records if algos is None or r.algorithm in algos]
        lexi_reg = report.merge_best_known(
            [r for r in records if r.algorithm == "lexi"])
        report.emit_table(report.merge_best_known(pool), args.table,
                          args.output, lexi_registry=lexi_reg)
    else:
        report.emit_plot_data(report.merge_best_known(records),
                              args.figure, args.r, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lexicov",
        description="Short covering codes of radius 3: construction, "
                    "verification, and length tables.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    default_jobs = int(os.environ.get("SATURATE_THREADS", "1"))
    algos = ["lexi", "invlexi", "rand-greedy", "d-rand-greedy"]

    c = sub.add_parser("construct", help="build one parity-check matrix")
    c.add_argument("--algo", choices=algos, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--R", type=int, default=3)
    c.add_argument("--poly", help="primitive polynomial labels, constant first")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--attempts", type=int, default=1)
    c.add_argument("--config", help="greedy key=value config file")
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="verify a matrix file")
    v.add_argument("matrix")
    v.add_argument("--full", action="store_true",
                   help="recompute coverage by brute force")
    v.add_argument("--csv", help="also write the report as a CSV row")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run one algorithm over a q range")
    s.add_argument("--algo", choices=algos, required=True)
    s.add_argument("--q-range", required=True, metavar="LO:HI")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--R", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--attempts", type=int, default=1)
    s.add_argument("--config", help="greedy key=value config file")
    s.add_argument("--jobs", type=int, default=default_jobs)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("report", help="emit table or plot data from sweep CSVs")
    r.add_argument("csv", nargs="+")
    group = r.add_mutually_exclusive_group(required=True)
    group.add_argument("--table", choices=sorted(report.TABLE_SHAPES))
    group.add_argument("--figure", choices=report.PLOT_FIGURES)
    r.add_argument("--r", type=int, default=4, dest="r")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (FieldError, MalformedHeader, ColumnOutOfField, DuplicateColumnInFile,
            VerificationFailure, verify.RadiusExceedsThree, report.MissingRange,
            FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
