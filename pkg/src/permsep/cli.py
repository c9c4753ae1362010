"""Command-line front end.

Subcommands: ``construct`` (pow2 | pnn | pn2 | strip | balanced | decomp |
cover), ``verify``, ``solve``, ``bounds``, ``stats``.  Exit codes: 0
success / verified, 1 verification found a violating pair (witness as JSON
on stderr), 2 usage error, 3 time limit hit.

Output is deterministic for identical inputs and seeds; the solver's wall
time goes to stderr so stdout stays byte-stable.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import bounds as bounds_mod
from . import constructions as cons
from .jsonl import dumps, family_header, read_family, write_family
from .merging import width_double_profile
from .perms import EXHAUSTIVE, SAMPLED, verify_family
from .solver import build_graph, max_clique, witness_family

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_TIME_LIMIT = 3


def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("PERMSEP_JOBS", "1")))
    except ValueError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permsep",
        description="k-neighbor separated permutation families: "
                    "construct, verify, bound, solve.")
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="emit a family as JSONL")
    con.add_argument("kind", choices=["pow2", "pnn", "pn2", "strip",
                                      "balanced", "decomp", "cover"])
    con.add_argument("--n", type=int)
    con.add_argument("--ell", type=int, default=1)
    con.add_argument("--r", type=int)
    con.add_argument("--k", type=int)
    con.add_argument("--out", type=str, default=None)
    con.add_argument("--count-only", action="store_true",
                     help="emit stats JSON instead of enumerating")
    con.add_argument("--cap", type=int, default=1_000_000)
    con.add_argument("--jobs", type=int, default=_jobs_default())

    ver = sub.add_parser("verify", help="check a family file pairwise")
    ver.add_argument("family", type=str)
    ver.add_argument("--k", type=int, required=True)
    ver.add_argument("--mode", choices=[EXHAUSTIVE, SAMPLED],
                     default=EXHAUSTIVE)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--count", type=int, default=10_000)
    ver.add_argument("--jobs", type=int, default=_jobs_default())

    sol = sub.add_parser("solve", help="exact P(n,k) by max clique")
    sol.add_argument("--n", type=int, required=True)
    sol.add_argument("--k", type=int, required=True)
    sol.add_argument("--time-limit", type=float, default=None)
    sol.add_argument("--long-run", action="store_true",
                     help="allow the expensive cells (defaults their "
                          "time limit to one hour)")
    sol.add_argument("--witness-out", type=str, default=None)

    bnd = sub.add_parser("bounds", help="closed-form bounds for (n, k)")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--k", type=int, required=True)

    sta = sub.add_parser("stats", help="count-only pipeline bookkeeping")
    grp = sta.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n", type=int, help="pow2 pipeline ground size")
    grp.add_argument("--g", type=int, help="width doubling on g grids")
    sta.add_argument("--ell", type=int, default=1)
    sta.add_argument("--grid-w", type=int, default=1)
    sta.add_argument("--grid-h", type=int, default=1)
    return parser


def _construct(args) -> int:
    kind = args.kind

    def need(flag: str, value):
        if value is None:
            raise SystemExit(f"construct {kind} requires {flag}")
        return value

    if kind == "pow2" and args.count_only:
        stats = cons.pow2_stats(need("--n", args.n), args.ell)
        print(dumps(stats.to_json()))
        return EXIT_OK

    if kind == "pow2":
        perms, n_prime = cons.pow2_family(need("--n", args.n), args.ell,
                                          cap=args.cap)
        k = (1 << args.ell) + 1
        params = {"n": args.n, "ell": args.ell}
        n_out = n_prime
    elif kind == "pnn":
        n = need("--n", args.n)
        perms = cons.pnn_family(n)
        k, params, n_out = n, {"n": n}, n
    elif kind == "pn2":
        n = need("--n", args.n)
        perms = cons.fixed_edge_family(n)
        k, params, n_out = 2, {"n": n}, n
    elif kind == "strip":
        r = need("--r", args.r)
        kk = need("--k", args.k)
        perms = cons.strip_family(r, kk, cap=args.cap)
        k = kk + 3 * r + 1
        params = {"r": r, "k": kk}
        n_out = (kk + 3 * r) ** 2
    elif kind == "balanced":
        n = need("--n", args.n)
        perms = cons.balanced_family(n)
        k, params, n_out = 3, {"n": n}, n
    elif kind == "decomp":
        n = need("--n", args.n)
        perms = cons.ham_decomposition(n)
        k, params, n_out = 2, {"n": n}, n
    else:  # cover
        n = need("--n", args.n)
        perms = cons.ham_cover(n)
        k, params, n_out = 2, {"n": n}, n

    header = family_header(kind, params, n_out, k, len(perms),
                           sorted(set(perms[0])))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            write_family(fp, perms, header)
    else:
        write_family(sys.stdout, perms, header)
    return EXIT_OK


def _verify(args) -> int:
    with open(args.family, "r", encoding="utf-8") as fp:
        _header, perms = read_family(fp)
    report = verify_family(perms, args.k, args.mode, seed=args.seed,
                           count=args.count, jobs=args.jobs)
    print(dumps(report.to_json()))
    if not report.ok:
        print(dumps({"witness": list(report.witness),
                     "pairs": [list(perms[i]) for i in report.witness]}),
              file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _solve(args) -> int:
    expensive = args.n >= 7 and args.k >= 7
    if expensive and not args.long_run:
        raise SystemExit(
            f"(n={args.n}, k={args.k}) is a long-running cell; "
            "pass --long-run to allow it")
    time_limit = args.time_limit
    if expensive and time_limit is None:
        time_limit = 3600.0
    graph = build_graph(args.n, args.k)
    result = max_clique(graph, time_limit)
    print(dumps(result.to_json(include_wall_time=False)))
    print(f"wall_time={result.wall_time:.3f}s", file=sys.stderr)
    if args.witness_out:
        family = witness_family(graph, result)
        header = family_header("solve-witness",
                               {"n": args.n, "k": args.k},
                               args.n, args.k, len(family),
                               sorted(range(1, args.n + 1)))
        with open(args.witness_out, "w", encoding="utf-8") as fp:
            write_family(fp, family, header)
    return EXIT_OK if result.proven_optimal else EXIT_TIME_LIMIT


def _bounds(args) -> int:
    n, k = args.n, args.k
    lower: dict = {}
    upper: dict = {}
    if k == 2:
        lower["fixed_edge"] = bounds_mod.BoundValue(
            bounds_mod.factorial(n - 1), "(n-1)! paths through a fixed edge"
        ).to_json()
    if k == 3:
        cell = bounds_mod.exact_formulas(n, 3)
        lower["balanced_bipartitions"] = bounds_mod.BoundValue(
            cell.low, cell.formula).to_json()
    if k == n and n >= 3:
        lower["matching_cycles"] = bounds_mod.BoundValue(
            3 * n // 2 if n % 2 == 0 else 3 * (n - 1) // 2,
            "3n/2 (even) or 3(n-1)/2 (odd)").to_json()
    if k >= 3 and (k - 1) & (k - 2) == 0:  # k = 2^ell + 1
        ell = (k - 1).bit_length() - 1
        if ell >= 1 and n >= 4:
            stats = cons.pow2_stats(n, ell)
            entry = bounds_mod.BoundValue(
                stats.value, "width-doubling pipeline yield").to_json()
            entry["n_prime"] = stats.n_prime
            lower["width_doubling"] = entry

    upper["tuza_weak_cross"] = bounds_mod.tuza_bound(
        n - 1, n - k + 1).to_json()
    upper["tuza_4n"] = bounds_mod.BoundValue(4 ** n, "4^n").to_json()
    if k >= 3:
        upper["coloring_multinomial"] = bounds_mod.coloring_count_bound(
            n, k).to_json()
        upper["coloring_exponent"] = {
            "per_element_log2": bounds_mod.coloring_exponent(k),
            "per_element_log2_as_stated": bounds_mod.coloring_exponent(
                k, as_stated=True),
        }
    try:
        cell = bounds_mod.exact_formulas(n, k)
        exact = cell.to_json()
    except ValueError:
        exact = None
    print(dumps({"n": n, "k": k, "lower_bounds": lower,
                 "upper_bounds": upper, "exact": exact}))
    return EXIT_OK


def _stats(args) -> int:
    if args.n is not None:
        print(dumps(cons.pow2_stats(args.n, args.ell).to_json()))
    else:
        profile = width_double_profile(args.g, args.grid_w, args.grid_h)
        print(dumps({
            "g": profile.g,
            "w": profile.w,
            "h": profile.h,
            "sequence": list(profile.sequence),
            "family_size": str(profile.family_size),
            "doubled_count": profile.doubled_count,
            "shape_census": {f"{w}x{h}": c for (w, h), c in profile.census},
            "leftover_cells": profile.leftover_cells,
        }))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "construct":
            return _construct(args)
        if args.command == "verify":
            return _verify(args)
        if args.command == "solve":
            return _solve(args)
        if args.command == "bounds":
            return _bounds(args)
        return _stats(args)
    except SystemExit as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, cons.FamilyTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
