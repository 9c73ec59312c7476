"""Command-line entry point: ``pwip <subcommand> ...``.

Exit codes: 0 success (or feasible / agree), 1 infeasible / disagree, 2 error.
The default seed for generators is read from ``PWIP_SEED``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from pwip.cnf import brute_force_sat, parse_dimacs
from pwip.corpus import DEFAULT_SEED, bench_corpus, handcrafted_formulas, random_cnf_corpus
from pwip.errors import PwipError
from pwip.exactla import RationalMatrix
from pwip.instance_io import read_instance, save_instance
from pwip.matroid import PathOrdering, cut_profile, optimal_ordering_bruteforce, sparse_cut_profile
from pwip.reductions import (
    IpInstance,
    reduce_binary,
    reduce_eth,
    reduce_pathwidth,
    witness_eth,
    witness_pathwidth,
)
from pwip.solver import solve_box_dp, solve_bruteforce, solve_pathwidth_dp, stage_bound_check

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2
BENCH_HEADER = ["id", "m", "n", "d", "k", "max_set", "millis"]


def default_seed() -> int:
    return int(os.environ.get("PWIP_SEED", DEFAULT_SEED))


def _read_cnf(path):
    return parse_dimacs(Path(path).read_bytes())


def _reduce(phi, construction: str, blocks: int | None) -> IpInstance:
    if construction == "eth":
        return reduce_eth(phi)
    if blocks is None:
        raise PwipError(f"--blocks is required for the {construction} construction")
    if construction == "pathwidth":
        return reduce_pathwidth(phi, blocks)
    return reduce_binary(phi, blocks)


def _solve(inst: IpInstance, method: str, cap: int | None = None):
    if method == "pathwidth":
        return solve_pathwidth_dp(inst)
    if method == "box":
        return solve_box_dp(inst)
    return solve_bruteforce(inst, cap)


def instance_width(inst: IpInstance, ordering: PathOrdering | None = None) -> tuple[int, list[int]]:
    """Width and cut profile of ``A`` under ``ordering`` (default: the instance's own)."""
    if ordering is None:
        ordering = inst.ordering or PathOrdering.natural(inst.n)
    profile = sparse_cut_profile([inst.sparse_column(j) for j in ordering], inst.m)
    return 1 + max(profile, default=0), profile


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    report = _solve(inst, args.method, args.cap)
    if args.stats:
        with open(args.stats, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["stage", "size", "cut_dim"])
            dims = report.stats.cut_dims or [""] * len(report.stats.sizes)
            for t, (size, dim) in enumerate(zip(report.stats.sizes, dims), start=1):
                w.writerow([t, size, dim])
    if report.feasible:
        print("FEASIBLE")
        print(" ".join(map(str, report.witness.x)))
        return EXIT_OK
    print("INFEASIBLE")
    return EXIT_NO


def cmd_reduce(args) -> int:
    phi = _read_cnf(args.cnf)
    inst = _reduce(phi, args.construction, args.blocks)
    save_instance(inst, args.out)
    print(f"wrote {args.out}: {inst.m} rows x {inst.n} cols")
    return EXIT_OK


def cmd_width(args) -> int:
    inst = read_instance(args.instance)
    if args.ordering == "optimal":
        M = RationalMatrix.from_rows(inst.A, inst.n)
        ordering, width = optimal_ordering_bruteforce(M)
        profile = cut_profile(M, ordering)
    else:
        ordering = inst.ordering if args.ordering == "given" else None
        ordering = ordering or PathOrdering.natural(inst.n)
        width, profile = instance_width(inst, ordering)
    print(f"width {width}")
    print("order " + " ".join(str(p + 1) for p in ordering))
    print("cuts " + " ".join(map(str, profile)))
    return EXIT_OK


def cmd_check(args) -> int:
    phi = _read_cnf(args.cnf)
    inst = _reduce(phi, args.construction, args.blocks)
    sat = brute_force_sat(phi)
    report = solve_pathwidth_dp(inst)
    agree = (sat is not None) == report.feasible
    print(f"sat {'SAT' if sat is not None else 'UNSAT'}")
    print(f"ip {'FEASIBLE' if report.feasible else 'INFEASIBLE'}")
    if sat is not None:
        # The binary instance shares the certificate of the path-width instance.
        if args.construction == "eth":
            x = witness_eth(inst, sat).x
        else:
            x = witness_pathwidth(reduce_pathwidth(phi, args.blocks), sat).x
        ok = inst.is_solution(x)
        print(f"witness {'VERIFIED' if ok else 'REJECTED'}")
        agree = agree and ok
    print("AGREE" if agree else "DISAGREE")
    return EXIT_OK if agree else EXIT_NO


def bench_rows(spec: dict, timing: bool = False) -> list[list]:
    rows = []
    for item in bench_corpus(spec):
        inst = item.instance
        k, _ = instance_width(inst)
        report = solve_pathwidth_dp(inst)
        if not stage_bound_check(report, inst):
            raise AssertionError(f"{item.id}: stage set size above (d+1)^dim S")
        max_set = report.stats.max_set
        if max_set > (inst.d + 1) ** k:
            raise AssertionError(f"{item.id}: max set {max_set} above (d+1)^k = {(inst.d + 1) ** k}")
        millis = f"{report.stats.millis:.3f}" if timing else "NA"
        rows.append([item.id, inst.m, inst.n, inst.d, k, max_set, millis])
    return rows


def cmd_bench(args) -> int:
    spec = json.loads(Path(args.corpus).read_text())
    spec.setdefault("seed", args.seed)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_HEADER)
    w.writerows(bench_rows(spec, args.timing))
    Path(args.out).write_text(buf.getvalue())
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_gen_cnf(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    items = random_cnf_corpus(args.seed, args.count)
    if args.handcrafted:
        items += handcrafted_formulas()
    for name, phi in items:
        (out / f"{name}.cnf").write_text(f"c {name}\n" + phi.to_dimacs())
    print(f"wrote {len(items)} formulas to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pwip", description="IP feasibility along column orderings of low path-width.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide feasibility of an instance file")
    s.add_argument("--instance", required=True)
    s.add_argument("--method", choices=["pathwidth", "box", "brute"], default="pathwidth")
    s.add_argument("--cap", type=int, default=None, help="entry cap for --method brute (default max b)")
    s.add_argument("--stats", help="write per-stage set sizes as CSV")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("reduce", help="compile a DIMACS formula into an instance file")
    s.add_argument("--cnf", required=True)
    s.add_argument("--construction", choices=["pathwidth", "binary", "eth"], default="pathwidth")
    s.add_argument("--blocks", type=int, help="number of variable blocks c")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("width", help="ordering width and cut profile")
    s.add_argument("--instance", required=True)
    s.add_argument("--ordering", choices=["given", "natural", "optimal"], default="given")
    s.set_defaults(func=cmd_width)

    s = sub.add_parser("check", help="compare brute-force SAT with the reduced instance")
    s.add_argument("--cnf", required=True)
    s.add_argument("--construction", choices=["pathwidth", "binary", "eth"], default="pathwidth")
    s.add_argument("--blocks", type=int)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bench", help="run the DP over a seeded corpus and write CSV")
    s.add_argument("--corpus", required=True, help="JSON corpus spec")
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=int, default=default_seed(), help="used when the spec has no seed")
    s.add_argument("--timing", action="store_true", help="record wall time (output is then not reproducible)")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("gen-cnf", help="write a seeded random CNF corpus as DIMACS files")
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--seed", type=int, default=default_seed())
    s.add_argument("--handcrafted", action="store_true", help="also write the handcrafted edge formulas")
    s.set_defaults(func=cmd_gen_cnf)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PwipError, ValueError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
