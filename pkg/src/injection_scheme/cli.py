"""Command-line interface: classes, table, verify, bound, rsk and tables."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import store
from .bounds import DistanceSet, delsarte_bound
from .combinatorics import strip_pairs, syt_count
from .injections import (
    Injection,
    class_distance,
    enumerate_classes,
    injection_count,
    rsk,
    rsk_inverse,
    sphere_size,
)
from .scheme import (
    DEFAULT_BRUTE_FORCE_CAP,
    DEFAULT_BUDGET,
    BudgetExceeded,
    CharacterTable,
    IntegrityError,
    character_table,
    dual_table,
    validate,
)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("injection_scheme")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad input; usage errors here exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


@dataclass
class RunConfig:
    cache_dir: Path
    threads: int = 1
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP
    budget: int = DEFAULT_BUDGET
    fmt: str = "human"

    def __post_init__(self):
        if self.threads < 1 or self.brute_force_cap < 1 or self.budget < 1:
            raise UsageError("threads, brute-force cap and budget must be positive")
        if self.fmt not in ("human", "json", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            cache_dir=store.resolve_cache_dir(args.cache_dir),
            threads=args.threads,
            brute_force_cap=args.cap,
            budget=args.budget,
            fmt=args.format,
        )


def _check_kn(k, n) -> tuple[int, int]:
    if k is None or n is None:
        raise UsageError("--k and --n are required")
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n, got k={k}, n={n}")
    return k, n


def _get_table(k: int, n: int, cfg: RunConfig, write_cache: bool = False) -> CharacterTable:
    """Cached table when present (checksum-validated), else a fresh computation."""
    ct = store.load(cfg.cache_dir, k, n)
    if ct is not None:
        log.info("served (%d,%d) from %s", k, n, store.cache_path(cfg.cache_dir, k, n))
        return ct
    ct = character_table(k, n, budget=cfg.budget, threads=cfg.threads)
    if write_cache:
        store.save(cfg.cache_dir, ct)
    return ct


def _emit(text: str, out: str | None) -> None:
    if out:
        store.write_atomic(Path(out), text)
    else:
        sys.stdout.write(text)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- commands


def cmd_classes(args, cfg: RunConfig) -> int:
    k, n = _check_kn(args.k, args.n)
    classes = enumerate_classes(k, n)
    rows = [(str(c), sphere_size(c, k, n), class_distance(c, k)) for c in classes]
    total = sum(v for _, v, _ in rows)
    if cfg.fmt == "json":
        doc = {"k": k, "n": n, "classes": [{"type": t, "valency": str(v), "distance": d} for t, v, d in rows], "total": str(total)}
        _emit(json.dumps(doc, indent=1) + "\n", args.out)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["type", "valency", "distance"])
        w.writerows(rows)
        _emit(buf.getvalue(), args.out)
    else:
        width = max(len(t) for t, _, _ in rows)
        lines = [f"{t:<{width}}  valency {v:>12}  distance {d}" for t, v, d in rows]
        lines.append(f"{len(rows)} classes, total valency {total} = |S_{{{k},{n}}}| = {injection_count(k, n)}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _table_text(ct: CharacterTable, fmt: str) -> str:
    Q = dual_table(ct).Q
    class_names = [str(c) for c in ct.classes]
    irrep_names = [str(r) for r in ct.irreps]
    if fmt == "json":
        doc = {
            "k": ct.k,
            "n": ct.n,
            "classes": class_names,
            "irreps": irrep_names,
            "valencies": [str(v) for v in ct.valencies],
            "multiplicities": [str(m) for m in ct.multiplicities],
            "P": [[str(x) for x in row] for row in ct.P],
            "Q": [[_frac(x) for x in row] for row in Q],
        }
        return json.dumps(doc, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["P", *class_names])
        for name, row in zip(irrep_names, ct.P):
            w.writerow([name, *row])
        w.writerow([])
        w.writerow(["Q", *irrep_names])
        for name, row in zip(class_names, Q):
            w.writerow([name, *map(_frac, row)])
        return buf.getvalue()
    lines = [f"character table of S_{{{ct.k},{ct.n}}}: {ct.size} classes, |X| = {ct.order}", "", "classes (valency):"]
    cw = max(map(len, class_names))
    lines += [f"  {j:>3}  {c:<{cw}}  ({v})" for j, (c, v) in enumerate(zip(class_names, ct.valencies))]
    lines += ["", "irreps (multiplicity):"]
    iw = max(map(len, irrep_names))
    lines += [f"  {i:>3}  {r:<{iw}}  ({m})" for i, (r, m) in enumerate(zip(irrep_names, ct.multiplicities))]
    lines += ["", "P (rows irreps, columns classes):"]
    cells = [[str(x) for x in row] for row in ct.P]
    width = max(len(x) for row in cells for x in row)
    lines += ["  " + " ".join(x.rjust(width) for x in row) for row in cells]
    lines += ["", "Q (rows classes, columns irreps):"]
    qcells = [[_frac(x) for x in row] for row in Q]
    width = max(len(x) for row in qcells for x in row)
    lines += ["  " + " ".join(x.rjust(width) for x in row) for row in qcells]
    return "\n".join(lines) + "\n"


def cmd_table(args, cfg: RunConfig) -> int:
    k, n = _check_kn(args.k, args.n)
    ct = _get_table(k, n, cfg, write_cache=args.write_cache)
    _emit(_table_text(ct, cfg.fmt), args.out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    k, n = _check_kn(args.k, args.n)
    ct = _get_table(k, n, cfg)
    report = validate(ct, args.level, cfg.brute_force_cap)
    if cfg.fmt == "json":
        doc = {
            "k": k,
            "n": n,
            "level": args.level,
            "passed": report.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        }
        print(json.dumps(doc, indent=1))
    else:
        print("\n".join(report.lines()))
        print(f"({k},{n}) {args.level}: {'all checks pass' if report.passed else 'FAILED'}")
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _distance_set(args, k: int) -> DistanceSet:
    given = [x is not None for x in (args.min_d, args.equidistant, args.distances)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --min-d, --equidistant, --distances")
    try:
        if args.min_d is not None:
            return DistanceSet.min_distance(args.min_d, k)
        if args.equidistant is not None:
            return DistanceSet.equidistant(args.equidistant, k)
        return DistanceSet.explicit(parse_int_list(args.distances), k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.replace(" ", "").strip("{}").split(",") if x]
    except ValueError:
        raise ValueError(f"not a comma-separated list of integers: {text!r}") from None
    if not values:
        raise ValueError("empty list")
    return values


def cmd_bound(args, cfg: RunConfig) -> int:
    k, n = _check_kn(args.k, args.n)
    D = _distance_set(args, k)
    ct = _get_table(k, n, cfg)
    r = delsarte_bound(k, n, D, table=ct)
    fields = [
        ("lp_optimum", _frac(r.lp_optimum)),
        ("lp_bound", r.lp_bound),
        ("singleton", r.singleton),
        ("sphere_packing", r.sphere_packing),
        ("trivial_cc", r.trivial_cc),
        ("best", r.best),
    ]
    if cfg.fmt == "json":
        doc = {"k": k, "n": n, "distances": sorted(D.allowed), "kind": D.kind}
        doc.update({name: (None if v is None else str(v)) for name, v in fields})
        print(json.dumps(doc, indent=1))
    elif cfg.fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["k", "n", "distances", *(f for f, _ in fields)])
        w.writerow([k, n, str(D), *("" if v is None else v for _, v in fields)])
    else:
        print(f"S_{{{k},{n}}}, distances {D}")
        for name, v in fields:
            if v is not None:
                print(f"  {name:<15} {v}")
    return EXIT_OK


def cmd_rsk(args, cfg: RunConfig) -> int:
    k, n = _check_kn(args.k, args.n)
    if args.word:
        try:
            word = parse_int_list(args.word)
            sigma = Injection(tuple(word), n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if sigma.k != k:
            raise UsageError(f"word has length {sigma.k}, expected k={k}")
        p, q = rsk(sigma)
        if rsk_inverse(p, q) != sigma:
            print(f"{sigma}: inverse RSK does not recover the word", file=sys.stderr)
            return EXIT_MISMATCH
        if cfg.fmt == "json":
            doc = {"word": list(sigma.word), "P": {"shape": list(p.shape), "rows": [list(r) for r in p.rows]},
                   "Q": {"shape": list(q.shape), "rows": [list(r) for r in q.rows]}}
            print(json.dumps(doc, indent=1))
        else:
            print(f"{sigma} -> shapes {p.shape}/{q.shape}")
            print("P: " + " / ".join(" ".join(map(str, r)) for r in p.rows))
            print("Q: " + (" / ".join(" ".join(map(str, r)) for r in q.rows) or "(empty)"))
        return EXIT_OK
    total = sum(syt_count(mu) * syt_count(lam) for mu, lam in strip_pairs(k, n))
    expected = injection_count(k, n)
    ok = total == expected
    print(f"{total} = {expected} {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------- golden tables


@dataclass(frozen=True)
class GoldenRow:
    table: int
    n: int
    k: int
    distances: str
    bound: int
    triv: int | None
    italic: bool
    provenance: str

    def distance_set(self) -> DistanceSet:
        if self.distances.startswith("d>="):
            return DistanceSet.min_distance(int(self.distances[3:]), self.k)
        return DistanceSet.explicit(parse_int_list(self.distances), self.k)


def golden_rows(text: str | None = None) -> list[GoldenRow]:
    if text is None:
        text = resources.files("injection_scheme").joinpath("data/golden_tables.txt").read_text()
    rows = []
    for line in text.splitlines():
        body, _, comment = line.partition("#")
        f = body.split()
        if not f:
            continue
        rows.append(
            GoldenRow(
                int(f[0]), int(f[1]), int(f[2]), f[3], int(f[4]),
                None if f[5] == "-" else int(f[5]),
                len(f) > 6 and f[6] == "italic",
                comment.strip(),
            )
        )
    return rows


def check_row(row: GoldenRow, ct: CharacterTable) -> tuple[bool, str]:
    r = delsarte_bound(row.k, row.n, row.distance_set(), table=ct)
    ok = r.lp_bound <= row.bound if row.italic else r.lp_bound == row.bound
    got = f"LP {r.lp_bound}"
    if row.triv is not None:
        ok = ok and r.trivial_cc == row.triv
        got += f", Triv {r.trivial_cc}"
    return ok, got


def cmd_tables(args, cfg: RunConfig) -> int:
    rows = [r for r in golden_rows() if r.table == args.which and r.n <= args.max_n]
    tables: dict[tuple[int, int], CharacterTable | None] = {}
    mismatches = skipped = 0
    for row in rows:
        key = (row.k, row.n)
        if key not in tables:
            try:
                tables[key] = _get_table(row.k, row.n, cfg)
            except BudgetExceeded as exc:
                tables[key] = None
                log.info("skipping (%d,%d): %s", row.k, row.n, exc)
        want = f"LP {row.bound}" + ("" if row.triv is None else f", Triv {row.triv}")
        label = f"n={row.n} k={row.k} {row.distances}"
        if tables[key] is None:
            skipped += 1
            print(f"skipped   {label}: over budget (expected {want})")
            continue
        ok, got = check_row(row, tables[key])
        mismatches += not ok
        note = " (published value is not an LP bound; ours must not exceed it)" if row.italic else ""
        print(f"{'match' if ok else 'MISMATCH':<9} {label}: {got}, expected {want}{note}")
    print(f"table {args.which}: {len(rows) - skipped - mismatches} match, {mismatches} mismatch, {skipped} skipped")
    return EXIT_MISMATCH if mismatches else EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--cache-dir", help=f"table cache directory (else ${store.CACHE_ENV}, else {store.DEFAULT_CACHE_DIR})")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="operation budget for table assembly")
    common.add_argument("--cap", type=_positive, default=DEFAULT_BRUTE_FORCE_CAP, help="k!(n-k)! cap for brute-force oracles")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="injection-scheme", description="Character tables and LP bounds for the injection scheme S_{k,n}.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("classes", parents=[common], help="list cycle-path classes with valencies")
    p = sub.add_parser("table", parents=[common], help="print P and Q")
    p.add_argument("--write-cache", action="store_true")
    p = sub.add_parser("verify", parents=[common], help="run integrity checks on a table")
    p.add_argument("--level", choices=("algebraic", "bruteforce"), default="algebraic")
    p = sub.add_parser("bound", parents=[common], help="Delsarte LP bound for a distance set")
    p.add_argument("--min-d", type=int)
    p.add_argument("--equidistant", type=int)
    p.add_argument("--distances", help="comma-separated allowed distances")
    p = sub.add_parser("rsk", parents=[common], help="RSK of one injection, or the count identity")
    p.add_argument("--word", help="comma-separated images of 1..k")
    p = sub.add_parser("tables", parents=[common], help="recompute published tables and diff")
    p.add_argument("which", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--max-n", type=int, default=9)
    return parser


COMMANDS = {
    "classes": cmd_classes,
    "table": cmd_table,
    "verify": cmd_verify,
    "bound": cmd_bound,
    "rsk": cmd_rsk,
    "tables": cmd_tables,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"injection-scheme: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"injection-scheme: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (store.CacheError, IntegrityError) as exc:
        print(f"injection-scheme: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
