"""Command-line front end.

Subcommands: compute (solver class tables), oracle (tree-sum series),
verify (named exact/numeric check suites), euler (Euler-characteristic
tables), trees (tree census), count-ff (finite-field map count).  All exact
numbers are serialized as "p/q" strings; the only floats in any output come
from the advisory implicit-solution check.  Output is byte-identical across
runs and worker counts.

Exit codes: 0 success, 1 verification failure, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .eulerchi import chi_table, crosscheck_chi
from .solver import (extract_classes, potential, solve_phi0, verify_dt,
                     verify_implicit_numeric, verify_ode,
                     verify_potential_expansion)
from .target import (count_maps_bruteforce, parse_target, projective_space,
                     verify_recurrence)
from .trees import enum_trees, tree_sum_potential

USAGE_ERROR = 2
VERIFY_ERROR = 1

SUITES = ("oracle", "ode", "dt", "potential", "implicit", "recurrence",
          "ffcount", "chi")


def _parse_dmax(text):
    if text is None:
        return None
    return tuple(int(x) for x in text.split(","))


def _resolve(args):
    w = parse_target(args.target)
    dmax = _parse_dmax(getattr(args, "dmax", None))
    if dmax is None:
        dmax = w.grading.zero
    elif len(dmax) != w.grading.rank:
        raise ValueError(
            f"--dmax {','.join(map(str, dmax))} does not match "
            f"rank {w.grading.rank} of target {w.name}")
    return w, dmax


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    w, dmax = _resolve(args)
    table = extract_classes(potential(w, solve_phi0(w, args.kmax, dmax)), w)
    text = table.to_csv() if args.format == "csv" else table.to_json()
    _emit(text, args.out)
    return 0


def cmd_oracle(args) -> int:
    w, dmax = _resolve(args)
    series = tree_sum_potential(w, args.kmax, dmax, workers=args.workers)
    obj = {"target": w.name, "series": series.to_json()}
    _emit(json.dumps(obj, indent=2) + "\n", args.out)
    return 0


def cmd_euler(args) -> int:
    w, dmax = _resolve(args)
    rows = [{"k": k, "beta": list(d), "chi": str(v)}
            for (k, d), v in sorted(chi_table(w, args.kmax, dmax).items())]
    obj = {"target": w.name, "kmax": args.kmax, "dmax": list(dmax), "entries": rows}
    _emit(json.dumps(obj, indent=2) + "\n", args.out)
    return 0


def cmd_trees(args) -> int:
    lines = [f"{t.vcount}\t{aut}\t{t.canonical_code.decode('ascii')}"
             for t, aut in enum_trees(args.vmax)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_count_ff(args) -> int:
    count = count_maps_bruteforce(args.n, args.d, args.p)
    _emit(f"{count}\n", args.out)
    return 0


def _run_suite(suite, args):
    """One named check; returns (ok, detail)."""
    if suite in ("oracle", "ode", "dt", "potential", "chi", "implicit"):
        w, dmax = _resolve(args)
    if suite == "oracle":
        phi0 = solve_phi0(w, args.kmax, dmax)
        closed = potential(w, phi0)
        summed = tree_sum_potential(w, args.kmax, dmax, workers=args.workers)
        ok = closed == summed
        return ok, "solver potential equals tree sum" if ok else "route mismatch"
    if suite == "ode":
        res_a, res_b = verify_ode(solve_phi0(w, args.kmax, dmax))
        ok = res_a.is_zero and res_b.is_zero
        return ok, "both residuals vanish" if ok else f"residuals {res_a} ; {res_b}"
    if suite == "dt":
        phi0 = solve_phi0(w, args.kmax, dmax)
        ok = verify_dt(potential(w, phi0), phi0, w)
        return ok, "d/dt potential reproduces the fixed point" if ok else "mismatch"
    if suite == "potential":
        ok = verify_potential_expansion(w, args.nmax, args.kmax, dmax)
        return ok, f"expansions agree through degree {args.nmax}" if ok else "mismatch"
    if suite == "implicit":
        spread = verify_implicit_numeric(
            w, args.uval, args.zval, [0, "1/200", "1/100"],
            kmax=max(args.kmax, 10))
        ok = spread <= args.tolerance
        return ok, f"relative spread {spread:.3e} (tolerance {args.tolerance:.1e})"
    if suite == "chi":
        ok = crosscheck_chi(w, args.kmax, dmax)
        return ok, "u -> 1 limit matches exact classes" if ok else "mismatch"
    if suite == "recurrence":
        ok = verify_recurrence(args.n, args.dmaxff)
        return ok, f"degree recurrence for n={args.n} up to d={args.dmaxff}"
    if suite == "ffcount":
        primes = [int(p) for p in args.primes.split(",")]
        w = projective_space(args.n)
        for d in range(1, args.dmaxff + 1):
            for p in primes:
                counted = count_maps_bruteforce(args.n, d, p)
                expected = w.map_class((d,)).eval_at(p)
                if counted != expected:
                    return False, f"(n={args.n}, d={d}, p={p}): {counted} != {expected}"
        return True, f"counts match closed form for d<={args.dmaxff}, p in {primes}"
    raise ValueError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    results = []
    for suite in args.suite:
        ok, detail = _run_suite(suite, args)
        results.append({"suite": suite, "pass": ok, "detail": detail})
        print(f"{'PASS' if ok else 'FAIL'} {suite}: {detail}")
    summary = {"results": results, "ok": all(r["pass"] for r in results)}
    print(json.dumps(summary))
    return 0 if summary["ok"] else VERIFY_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablemaps",
        description="Exact classes of genus-zero stable-map moduli spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, kmax_default=None):
        p.add_argument("--target", default="point",
                       help="point | pn:N | file:PATH (default: point)")
        p.add_argument("--kmax", type=int, default=kmax_default,
                       help="t-truncation order")
        p.add_argument("--dmax", default=None,
                       help="comma-separated z-truncation per component")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--workers", type=int, default=1,
                       help="worker processes for the tree sum")

    p = sub.add_parser("compute", help="solver class table")
    add_common(p, kmax_default=4)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("oracle", help="tree-sum series (the brute-force route)")
    add_common(p, kmax_default=4)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run named verification suites")
    add_common(p, kmax_default=4)
    p.add_argument("--suite", action="append", choices=SUITES, required=True,
                   help="repeatable; each suite prints one PASS/FAIL line")
    p.add_argument("--nmax", type=int, default=4, help="phi-degree for the potential suite")
    p.add_argument("--n", type=int, default=1, help="projective dimension for recurrence/ffcount")
    p.add_argument("--dmaxff", type=int, default=2, help="max degree for recurrence/ffcount")
    p.add_argument("--primes", default="2,3,5", help="primes for ffcount")
    p.add_argument("--uval", default="4", help="u sample for the implicit suite")
    p.add_argument("--zval", default="1/1000", help="z sample for the implicit suite")
    p.add_argument("--tolerance", type=float, default=1e-5,
                   help="relative-spread tolerance for the implicit suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("euler", help="Euler-characteristic table")
    add_common(p, kmax_default=4)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("trees", help="tree census: vertex count, |Aut|, code")
    p.add_argument("--vmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("count-ff", help="finite-field map count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_count_ff)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "target", None) == "point" and getattr(args, "dmax", None):
        print("error: the point target has no z-grading; drop --dmax", file=sys.stderr)
        return USAGE_ERROR
    try:
        return args.func(args)
    except (ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
