"""Command-line front end.

Subcommands: h, cyclotomic, constant, sums, verify, report.  Exit codes:
0 success, 1 usage error or failed verification, 2 resource-cap error.
Caps resolve as flag > environment (CYCLODIV_TAU_CAP, CYCLODIV_REACHABLE_CAP)
> built-in default.  Exact integers serialize as decimal strings in JSON
wherever they can exceed 64-bit.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import asympt, hmax
from .arith import factorize
from .cyclotomic import cyclotomic_full, cyclotomic_truncated
from .errors import CapError
from .series import TruncatedSeries, dominated_by, ts_mul, ts_one

ENV_TAU_CAP = "CYCLODIV_TAU_CAP"
ENV_REACHABLE_CAP = "CYCLODIV_REACHABLE_CAP"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; this CLI reserves 2 for
    # resource caps, so route usage problems through exit code 1 instead.
    def error(self, message):
        raise _UsageError(message)


def _cap(flag_value: int | None, env: str, default: int) -> int:
    if flag_value is not None:
        return flag_value
    if env in os.environ:
        return int(os.environ[env])
    return default


def _fmt(v: float) -> str:
    return format(v, ".12g")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cyclodiv", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("h", help="compute H(r, n)")
    h.add_argument("--r", type=int, required=True)
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--method", choices=["brute", "fast", "both"], default="fast")
    h.add_argument("--witness", action="store_true", help="include the witness subset")
    h.add_argument("--tau-cap", type=int, default=None)
    h.add_argument("--reachable-cap", type=int, default=None)

    cyc = sub.add_parser("cyclotomic", help="cyclotomic polynomial, full or truncated")
    cyc.add_argument("m", type=int)
    cyc.add_argument("--order", type=int, default=None)
    cyc.add_argument("--format", choices=["json", "csv"], default="json")

    const = sub.add_parser("constant", help="Euler-product constant with tail bound")
    const.add_argument("--r", type=int, required=True)
    const.add_argument("--prime-limit", type=int, required=True)
    const.add_argument("--kind", choices=["g_at_1", "c_of_r"], default="g_at_1")

    sums = sub.add_parser("sums", help="exact partial sums vs. leading term")
    sums.add_argument("--r", type=int, required=True)
    sums.add_argument("--kind", choices=["h", "nu"], required=True)
    grp = sums.add_mutually_exclusive_group(required=True)
    grp.add_argument("--x", type=int)
    grp.add_argument("--checkpoints", type=int, nargs="+")
    sums.add_argument("--prime-limit", type=int, default=asympt.DEFAULT_PRIME_LIMIT)
    sums.add_argument("--jobs", type=int, default=1)
    sums.add_argument("--reachable-cap", type=int, default=None)
    sums.add_argument("--format", choices=["json", "csv"], default="csv")

    ver = sub.add_parser("verify", help="run the invariant sweeps")
    ver.add_argument("--r", type=int, required=True)
    ver.add_argument("--n-max", type=int, required=True)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--trials", type=int, default=1000, help="domination trials")
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--tau-cap", type=int, default=None)
    ver.add_argument("--reachable-cap", type=int, default=None)

    rep = sub.add_parser("report", help="convergence CSV plus rendered figure")
    rep.add_argument("--r", type=int, required=True)
    rep.add_argument("--kind", choices=["h", "nu", "both"], default="both")
    rep.add_argument("--checkpoints", type=int, nargs="+", required=True)
    rep.add_argument("--prime-limit", type=int, default=asympt.DEFAULT_PRIME_LIMIT)
    rep.add_argument("--jobs", type=int, default=1)
    rep.add_argument("--reachable-cap", type=int, default=None)
    rep.add_argument("--out-dir", default=".")
    return p


# ---------------------------------------------------------------------------
# subcommands


def _cmd_h(args) -> int:
    tau_cap = _cap(args.tau_cap, ENV_TAU_CAP, hmax.DEFAULT_TAU_CAP)
    reach_cap = _cap(args.reachable_cap, ENV_REACHABLE_CAP, hmax.DEFAULT_REACHABLE_CAP)
    results = []
    if args.method in ("brute", "both"):
        results.append(hmax.h_bruteforce(args.r, args.n, tau_cap=tau_cap))
    if args.method in ("fast", "both"):
        results.append(hmax.h_fast(args.r, args.n, cap=reach_cap))
    out = {
        "r": args.r,
        "n": args.n,
        "value": str(results[0].value),
        "method": args.method,
    }
    if args.method == "both":
        out["agree"] = results[0].value == results[1].value
        if not out["agree"]:
            print(json.dumps(out, indent=2))
            print("error: methods disagree", file=sys.stderr)
            return 1
    if args.witness:
        out["witness"] = list(results[-1].witness)
    print(json.dumps(out, indent=2))
    return 0


def _cmd_cyclotomic(args) -> int:
    if args.m < 1:
        raise _UsageError(f"m must be >= 1, got {args.m}")
    if args.order is not None:
        coeffs = list(cyclotomic_truncated(args.m, args.order).series.coeffs)
        meta = {"m": args.m, "order": args.order, "normalized": True}
    else:
        coeffs = cyclotomic_full(args.m)
        meta = {"m": args.m, "degree": len(coeffs) - 1}
    if args.format == "csv":
        print("i,coefficient")
        for i, c in enumerate(coeffs):
            print(f"{i},{c}")
    else:
        meta["coefficients"] = coeffs
        print(json.dumps(meta, indent=2))
    return 0


def _cmd_constant(args) -> int:
    fn = asympt.euler_product if args.kind == "g_at_1" else asympt.c_of_r
    est = fn(args.r, args.prime_limit)
    import mpmath as mp

    out = {
        "r": est.r,
        "kind": est.constant_kind,
        "value": float(mp.nstr(est.value, 10)),
        "tail_bound": est.tail_bound,
        "prime_limit": est.prime_limit,
    }
    print(json.dumps(out, indent=2))
    return 0


def _report_lines(report: asympt.PartialSumReport) -> list[str]:
    lines = ["x,sum,leading,ratio"]
    for row in report.rows:
        lines.append(f"{row.x},{row.total},{_fmt(row.leading)},{_fmt(row.ratio)}")
    return lines


def _cmd_sums(args) -> int:
    checkpoints = args.checkpoints if args.checkpoints else [args.x]
    reach_cap = _cap(args.reachable_cap, ENV_REACHABLE_CAP, hmax.DEFAULT_REACHABLE_CAP)
    (report,) = asympt.convergence_report(
        args.r,
        checkpoints,
        kinds=(args.kind,),
        prime_limit=args.prime_limit,
        cap=reach_cap,
        jobs=args.jobs,
    )
    if args.format == "json":
        out = {
            "r": report.r,
            "kind": report.summand_kind,
            "prime_limit": report.prime_limit,
            "rows": [
                {
                    "x": row.x,
                    "sum": str(row.total),
                    "leading": float(_fmt(row.leading)),
                    "ratio": float(_fmt(row.ratio)),
                }
                for row in report.rows
            ],
        }
        print(json.dumps(out, indent=2))
    else:
        for line in _report_lines(report):
            print(line)
    return 0


def _cmd_report(args) -> int:
    from .plots import render_convergence_figure

    kinds = ("nu", "h") if args.kind == "both" else (args.kind,)
    reach_cap = _cap(args.reachable_cap, ENV_REACHABLE_CAP, hmax.DEFAULT_REACHABLE_CAP)
    reports = asympt.convergence_report(
        args.r,
        args.checkpoints,
        kinds=kinds,
        prime_limit=args.prime_limit,
        cap=reach_cap,
        jobs=args.jobs,
    )
    os.makedirs(args.out_dir, exist_ok=True)
    written = []
    for rep in reports:
        path = os.path.join(args.out_dir, f"report_r{args.r}_{rep.summand_kind}.csv")
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(_report_lines(rep)) + "\n")
        written.append(path)
    fig_path = os.path.join(args.out_dir, f"report_r{args.r}.png")
    render_convergence_figure(reports, fig_path)
    written.append(fig_path)
    for path in written:
        print(path)
    return 0


# ---------------------------------------------------------------------------
# verify


def _verify_range(r, lo, hi, tau_cap, reach_cap):
    """Per-n invariant checks on [lo, hi]; returns counters and failures."""
    res = {
        "oracle_ok": 0,
        "oracle_n": 0,
        "oracle_skip": 0,
        "oracle_fail": [],
        "sandwich_ok": 0,
        "sandwich_n": 0,
        "sandwich_fail": [],
        "closed_ok": 0,
        "closed_n": 0,
        "closed_fail": [],
    }
    for n in range(lo, hi + 1):
        fast = hmax.h_fast(r, n, cap=reach_cap)
        if factorize(n).tau <= tau_cap:
            res["oracle_n"] += 1
            brute = hmax.h_bruteforce(r, n, tau_cap=tau_cap)
            if brute.value == fast.value:
                res["oracle_ok"] += 1
            else:
                res["oracle_fail"].append(n)
        else:
            res["oracle_skip"] += 1
        res["sandwich_n"] += 1
        _, wit_coeff = hmax.negative_mobius_witness(r, n)
        upper = hmax.upper_bound_explicit(r, n)
        if abs(wit_coeff) <= fast.value <= upper:
            res["sandwich_ok"] += 1
        else:
            res["sandwich_fail"].append(n)
        res["closed_n"] += 1
        if hmax._h_value(1, n) == 1 << (factorize(n).nu - 1):
            res["closed_ok"] += 1
        else:
            res["closed_fail"].append(n)
    return res


def _random_domination_trial(rng: random.Random) -> bool:
    """Random f_j each dominated by a nonnegative g_j; the products must
    stay dominated."""
    order = rng.randint(0, 8)
    count = rng.randint(1, 4)
    f_prod = ts_one(order)
    g_prod = ts_one(order)
    for _ in range(count):
        g = [rng.randint(0, 9) for _ in range(order + 1)]
        f = [rng.choice((-1, 1)) * rng.randint(0, gi) for gi in g]
        f_prod = ts_mul(f_prod, TruncatedSeries(order, tuple(f)))
        g_prod = ts_mul(g_prod, TruncatedSeries(order, tuple(g)))
    return dominated_by(f_prod, g_prod)


def _cmd_verify(args) -> int:
    if args.n_max < 2:
        raise _UsageError(f"--n-max must be >= 2, got {args.n_max}")
    tau_cap = _cap(args.tau_cap, ENV_TAU_CAP, hmax.DEFAULT_TAU_CAP)
    reach_cap = _cap(args.reachable_cap, ENV_REACHABLE_CAP, hmax.DEFAULT_REACHABLE_CAP)

    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        step = max(1, (args.n_max - 1) // (4 * args.jobs))
        ranges = []
        lo = 2
        while lo <= args.n_max:
            hi = min(lo + step - 1, args.n_max)
            ranges.append((lo, hi))
            lo = hi + 1
        tasks = [(args.r, lo, hi, tau_cap, reach_cap) for lo, hi in ranges]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_verify_range, *zip(*tasks)))
    else:
        parts = [_verify_range(args.r, 2, args.n_max, tau_cap, reach_cap)]

    res = parts[0]
    for part in parts[1:]:
        for key, val in part.items():
            res[key] = res[key] + val
    for key in ("oracle_fail", "sandwich_fail", "closed_fail"):
        res[key] = sorted(res[key])

    rng = random.Random(args.seed)
    dom_ok = sum(_random_domination_trial(rng) for _ in range(args.trials))

    skipped = (
        f", {res['oracle_skip']} skipped (tau cap {tau_cap})" if res["oracle_skip"] else ""
    )
    print(f"oracle agreement (r={args.r}): {res['oracle_ok']}/{res['oracle_n']}{skipped}")
    print(f"sandwich holds: {res['sandwich_ok']}/{res['sandwich_n']}")
    print(f"closed form H(1,n) = 2^(nu(n)-1): {res['closed_ok']}/{res['closed_n']}")
    print(f"product domination (seed {args.seed}): {dom_ok}/{args.trials}")

    failures = res["oracle_fail"] + res["sandwich_fail"] + res["closed_fail"]
    if failures or dom_ok != args.trials:
        for label, ns in (
            ("oracle", res["oracle_fail"]),
            ("sandwich", res["sandwich_fail"]),
            ("closed form", res["closed_fail"]),
        ):
            if ns:
                shown = ", ".join(map(str, ns[:10]))
                more = "" if len(ns) <= 10 else f" (+{len(ns) - 10} more)"
                print(f"{label} failures at n = {shown}{more}")
        print("verify: FAIL")
        return 1
    print("verify: PASS")
    return 0


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "h":
            return _cmd_h(args)
        if args.command == "cyclotomic":
            return _cmd_cyclotomic(args)
        if args.command == "constant":
            return _cmd_constant(args)
        if args.command == "sums":
            return _cmd_sums(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "report":
            return _cmd_report(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except CapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
