"""Command-line front end.

    ptmpow seq    {t,b,f-eval} M A..B        sequence dumps (csv or json)
    ptmpow poly   {f,g,W} N | h I K M        exact polynomial printouts
    ptmpow val    {t-pow2,t3,b-pow2m1,b1}    valuation reports as JSON lines
    ptmpow verify CAMPAIGN                   run a named campaign
    ptmpow search TARGET                     least n with t_2(n) = TARGET
    ptmpow cache  {store,load} ...           sequence cache files

Exit codes: 0 all-pass, 1 theorem counterexample, 2 usage/data error,
3 campaign finished in observation-only mode.  Output on stdout is
byte-deterministic for fixed (version, arguments); timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .campaigns import CAMPAIGNS, CampaignSpec, exit_code_for, run_spec
from .core_arith import INFINITE, nu2
from .bm_sequences import (
    b1_prefix,
    bm_cache,
    h_export,
    h_poly,
    install_bm_prefix,
    v2_b1_churchhouse,
    v2_b2k1_closed,
)
from .f_polys import shared_fseries, w_poly
from .seqcache import CacheError, cache_load, cache_path, cache_store
from .tm_sequences import (
    ValuationReport,
    install_tm_prefix,
    t2_solve,
    tm_cache,
    v2_t2k_closed,
    v2_t3_closed,
)


def _jdump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like A..B, got {text!r}")
    a, b = int(lo), int(hi)
    if a < 0 or b < a:
        raise ValueError(f"bad range {text!r}")
    return a, b


def _cmd_seq(args) -> int:
    lo, hi = _parse_range(args.range)
    if args.family == "t":
        if args.m < 1:
            raise ValueError("t requires m >= 1")
        vals = tm_cache(args.m).prefix(hi)
    elif args.family == "b":
        if args.m < 1:
            raise ValueError("b requires m >= 1")
        vals = bm_cache(args.m).prefix(hi)
    else:
        vals = shared_fseries().value_prefix(args.m, hi)
    window = vals[lo : hi + 1]
    if args.format == "json":
        print(_jdump({"family": args.family, "m": args.m, "from": lo, "to": hi,
                      "values": [str(v) for v in window]}))
    else:
        for n, v in zip(range(lo, hi + 1), window):
            print(f"{n},{v}")
    return 0


def _cmd_poly(args) -> int:
    kind = args.kind
    p = args.params
    if kind in ("f", "g", "W") and len(p) != 1:
        raise ValueError(f"poly {kind} takes one parameter")
    if kind == "h" and len(p) != 3:
        raise ValueError("poly h takes i k m")
    if kind == "f":
        fp = shared_fseries().f(p[0])
        if args.format == "json":
            print(_jdump({"kind": "f", "n": p[0], "den_factorial_of": fp.fact_index,
                          "num_coeffs": [str(c) for c in fp.num.coeffs]}))
        else:
            print(fp.format("t"))
    elif kind == "g":
        g = shared_fseries().g(p[0])
        if args.format == "json":
            print(_jdump({"kind": "g", "n": p[0], "coeffs": [str(c) for c in g.coeffs]}))
        else:
            print(g.format("t"))
    elif kind == "W":
        w = w_poly(p[0])
        if args.format == "json":
            print(_jdump({"kind": "W", "k": p[0], "coeffs": [str(c) for c in w.coeffs]}))
        else:
            print(w.format("n"))
    else:
        i, k, m = p
        if args.format == "json":
            print(_jdump(h_export(i, k, m)))
        else:
            print(h_poly(i, k, m).format("x"))
    return 0


def _print_val(report: ValuationReport) -> None:
    enc = lambda v: "INFINITE" if v is INFINITE else v
    print(_jdump({"n": report.n, "direct": enc(report.direct),
                  "closed": enc(report.closed), "ok": report.ok}))


def _cmd_val(args) -> int:
    n_max = args.bound
    reports: list[ValuationReport] = []
    if args.family == "t-pow2":
        vals = tm_cache(1 << args.k).prefix(n_max)
        for n in range(n_max + 1):
            d, c = nu2(vals[n]), v2_t2k_closed(args.k, n)
            reports.append(ValuationReport(n, d, c, d == c))
    elif args.family == "t3":
        vals = tm_cache(3).prefix(n_max)
        for n in range(1, n_max + 1):
            d = INFINITE if vals[n] == 0 else nu2(vals[n])
            c = v2_t3_closed(n)
            reports.append(ValuationReport(n, d, c, d == c))
    elif args.family == "b-pow2m1":
        vals = bm_cache((1 << args.k) - 1).prefix(n_max)
        for n in range(n_max + 1):
            d, c = nu2(vals[n]), v2_b2k1_closed(args.k, n)
            reports.append(ValuationReport(n, d, c, d == c))
    else:  # b1
        vals = b1_prefix(n_max)
        for n in range(2, n_max + 1):
            d, c = nu2(vals[n]), v2_b1_churchhouse(n)
            reports.append(ValuationReport(n, d, c, d == c))
    for rep in reports:
        _print_val(rep)
    return 0 if all(r.ok for r in reports) else 1


def _preload_caches(cache_dir: str) -> None:
    if not os.path.isdir(cache_dir):
        return
    for name in sorted(os.listdir(cache_dir)):
        if not name.endswith(".seq"):
            continue
        family, m, values = cache_load(os.path.join(cache_dir, name))
        if family == "t":
            install_tm_prefix(m, values)
        elif family == "b":
            install_bm_prefix(m, values)


def _cmd_verify(args) -> int:
    if args.campaign not in CAMPAIGNS:
        print(f"unknown campaign {args.campaign!r}; known: "
              f"{', '.join(sorted(CAMPAIGNS))}", file=sys.stderr)
        return 2
    if args.cache_dir:
        _preload_caches(args.cache_dir)
    bounds = {}
    if args.bound is not None:
        # override every integer limit the campaign declares
        bounds = {key: args.bound for key in CAMPAIGNS[args.campaign].defaults}
    spec = CampaignSpec(args.campaign, bounds=bounds, output_path=args.out,
                        jobs=args.jobs)
    report = run_spec(spec)
    print(_jdump(report.payload()))
    print(f"{report.name}: {report.status} in {report.wall_ms} ms", file=sys.stderr)
    return exit_code_for(report)


def _cmd_search(args) -> int:
    if args.target == 0:
        print("t_2 never vanishes; 0 is not a value", file=sys.stderr)
        return 2
    res = t2_solve(args.target)
    print(_jdump({"target": res.target, "n": res.n,
                  "shifted_instance": res.shifted_instance}))
    return 0


def _cmd_cache(args) -> int:
    if args.action == "store":
        if args.family == "t":
            values = list(tm_cache(args.m).prefix(args.bound)[: args.bound + 1])
        else:
            values = list(bm_cache(args.m).prefix(args.bound)[: args.bound + 1])
        path = args.path or cache_path(args.cache_dir or ".", args.family, args.m)
        cache_store(args.family, args.m, values, path)
        print(_jdump({"path": path, "family": args.family, "m": args.m,
                      "count": len(values)}))
        return 0
    path = args.path or cache_path(args.cache_dir or ".", args.family, args.m)
    family, m, values = cache_load(path)
    print(_jdump({"path": path, "family": family, "m": m, "count": len(values)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ptmpow",
        description="exact arithmetic and verification for the coefficient "
                    "families of prod(1-x^(2^n))^t")
    ap.add_argument("--version", action="version", version=f"ptmpow {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="dump a sequence window")
    p.add_argument("family", choices=["t", "b", "f-eval"])
    p.add_argument("m", type=int, help="m for t/b; the evaluation point for f-eval")
    p.add_argument("range", help="inclusive window A..B")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(fn=_cmd_seq)

    p = sub.add_parser("poly", help="print one polynomial exactly")
    p.add_argument("kind", choices=["f", "g", "W", "h"])
    p.add_argument("params", type=int, nargs="+", help="f/g/W: n | k; h: i k m")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=_cmd_poly)

    p = sub.add_parser("val", help="valuation report: direct vs closed form")
    p.add_argument("family", choices=["t-pow2", "t3", "b-pow2m1", "b1"])
    p.add_argument("--k", type=int, default=1, help="k for the t-pow2/b-pow2m1 families")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=_cmd_val)

    p = sub.add_parser("verify", help="run a named verification campaign")
    p.add_argument("campaign")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="append the report as a JSON line")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("search", help="least n with t_2(n) = TARGET")
    p.add_argument("target", type=int)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("cache", help="store/load sequence prefixes")
    p.add_argument("action", choices=["store", "load"])
    p.add_argument("family", choices=["t", "b"])
    p.add_argument("m", type=int)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--path", default=None)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(fn=_cmd_cache)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "cache" and args.action == "store" and args.bound is None:
        print("cache store requires --bound", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (ValueError, KeyError, CacheError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
