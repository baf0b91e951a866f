"""Batch command-line front end.

Every subcommand builds a report dictionary, renders it as JSON (default)
or text, and exits 0 when all of its checks pass, 1 when a mathematical
check fails and 2 on usage or environment errors.  Progress goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import cache
from .exactalg import frac_str, span_compare

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _degrees(args, default_max: int, lo: int = 1):
    if getattr(args, "degree", None) is not None:
        return [args.degree]
    top = args.max_degree if args.max_degree is not None else default_max
    if top < lo:
        raise UsageError("degree must be >= %d" % lo)
    return list(range(lo, top + 1))


def _load_series(path, digits):
    from .mzvnum import series_from_json

    try:
        with open(path) as fh:
            data = json.load(fh)
        if "results" in data:  # a kz-witness report
            data = data["results"][0]["series"]
        return series_from_json(data, digits)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError("cannot read series %s: %s" % (path, exc)) from exc


def _fmt(x, digits=20):
    from .mzvnum import ApproxReal

    if isinstance(x, ApproxReal):
        return x.to_json(digits)
    return frac_str(x)


# ---------------------------------------------------------------------------
# subcommands; each returns (results, passed)


def cmd_ist(args):
    from .confluence import ist_basis

    out = []
    for d in _degrees(args, 2):
        _progress("ist: degree %d" % d)
        b = ist_basis(d, a0=args.a0)
        out.append(dict(b.to_json(), rank=b.rank))
    return out, True


def cmd_icf(args):
    from .confluence import FiltrationLevel, basis_words, icf_basis

    out = []
    for w in _degrees(args, 3, lo=2):
        _progress("icf: weight %d" % w)
        b = icf_basis(w, a0=args.a0)
        dim = len(basis_words(FiltrationLevel.A0, w))
        out.append(dict(b.to_json(), rank=b.rank, quotient_dimension=dim - b.rank))
    return out, True


def cmd_ideal_compare(args):
    from .confluence import ideal_generators, icf_basis

    out, ok = [], True
    for w in _degrees(args, 5, lo=2):
        _progress("ideal-compare: weight %d" % w)
        icf = icf_basis(w)
        rec = {"weight": w, "rank_icf": icf.rank}
        for kind in ("RDS", "Delta"):
            g = ideal_generators(kind, w)
            cmp = span_compare(g.vectors(), icf.vectors(), 2 ** (w - 2))
            contained = cmp.relation in ("equal", "a_subset_b")
            ok &= contained
            rec[kind] = {"rank": g.rank, "relation_to_icf": cmp.relation, "contained": contained}
        out.append(rec)
    return out, ok


def cmd_hilbert(args):
    from . import bar5, p5

    out, ok = [], True
    for d in _degrees(args, 4):
        _progress("hilbert: degree %d" % d)
        pred = p5.hilbert_dimension(d)
        bar = len(bar5.integrable_basis(d))
        ref = 5 ** d - p5.reference_ideal_rank(d) if d <= args.reference_limit else None
        rew = len(p5.normal_words(d))
        good = bar == pred == rew and (ref is None or ref == pred)
        ok &= good
        out.append({"degree": d, "predicted": pred, "bar_integrable": bar, "p5_rank_route": ref, "p5_normal_words": rew, "pass": good})
    return out, ok


def _series_or_kz(args):
    from .mzvnum import kz_series

    if args.series:
        return _load_series(args.series, args.digits), True
    _progress("building KZ witness: degree %d, %d digits" % (args.degree or 4, args.digits))
    return kz_series(args.degree or 4, args.digits), False


def _residual_report(kind, args):
    from .mzvnum import ApproxReal, max_abs
    from .p5 import residual

    s, _ = _series_or_kz(args)
    res = residual(kind, s)
    vals = list(res.terms.values())
    numeric = any(isinstance(v, ApproxReal) for v in vals)
    mx, bound = max_abs(vals)
    tol = 10.0 ** -(args.digits - 15)
    ok = bound < tol if numeric else not vals
    return [{"relation": kind, "max_degree": s.N, "numeric": numeric, "max_residual": "%.3e" % mx, "bound": "%.3e" % bound, "residual_terms": len(vals)}], ok


def cmd_pentagon_check(args):
    return _residual_report(args.kind, args)


def cmd_two_cycle_check(args):
    return _residual_report("two_cycle", args)


def cmd_classify(args):
    from .associator import classify
    from .mzvnum import ApproxReal, tolerance_zero

    s, _ = _series_or_kz(args)
    numeric = any(isinstance(v, ApproxReal) for v in s.terms.values())
    verdict = classify(s, tolerance_zero(10.0 ** -(args.digits - 15)) if numeric else None)
    rec = verdict.to_json(lambda x: _fmt(x))
    if args.expect:
        ok = verdict.classification == args.expect
        rec["expected"] = args.expect
    else:
        ok = True
    return [rec], ok


def cmd_equivalence(args):
    from .associator import equivalence_check

    out, ok = [], True
    for d in _degrees(args, 4, lo=2):
        _progress("equivalence: degree %d" % d)
        r = equivalence_check(d)
        ok &= r.equal
        out.append(r.to_json())
    return out, ok


def cmd_mzv(args):
    from .mzvnum import mzv

    if not args.index:
        raise UsageError("mzv needs an index, e.g. `mzv 2 1`")
    try:
        v = mzv(args.index, args.digits)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = v.error() < Fraction(1, 10 ** args.digits)
    return [{"index": list(args.index), "value": v.decimal(args.digits), "err": "%.3e" % float(v.error())}], ok


def cmd_kz_witness(args):
    from .mzvnum import kz_series, numeric_check, series_to_json

    N = args.degree or 4
    _progress("kz-witness: degree %d, %d digits" % (N, args.digits))
    s = kz_series(N, args.digits)
    tol = 10.0 ** -(args.digits - 15)
    checks = []
    ok = True
    for kind in ("pentagon", "two_cycle", "confluence"):
        _progress("kz-witness: %s residual" % kind)
        r = numeric_check(kind, N, args.digits, series=s)
        ok &= r.passed(tol)
        checks.append(dict(r.to_json(), passed=r.passed(tol)))
    rec = {"series": series_to_json(s, args.digits), "checks": checks, "tolerance": "%.0e" % tol}
    return [rec], ok


def cmd_key_formula(args):
    from .mzvnum import numeric_check

    N = args.degree or 3
    r = numeric_check("key_formula", N, args.digits)
    tol = 10.0 ** -(args.digits - 20)
    return [dict(r.to_json(), tolerance="%.0e" % tol, passed=r.passed(tol))], r.passed(tol)


def cmd_bar_selftest(args):
    from . import bar5
    from .confluence import partial_z
    from .ncseries import A_Z, NcPoly

    out, ok = [], True
    for d in _degrees(args, 3):
        _progress("bar-selftest: degree %d" % d)
        r2j2 = compat = 0
        for w in A_Z.words(d):
            l = NcPoly.word(A_Z, w)
            jl = bar5.j2(l)
            r2j2 += bar5.letter_projection("r2", jl) != l
            for a in "01":
                compat += bar5.tilde_partial(a, jl) != bar5.j2(partial_z(a, l))
        gen = bar5.generating_set_check(d)
        inter, dim_ist, extra = bar5.j2_ist_check(d)
        good = r2j2 == 0 and compat == 0 and gen.relation == "equal" and inter == dim_ist and extra == 0
        ok &= good
        out.append({
            "degree": d,
            "r2_j2_failures": r2j2,
            "tilde_partial_failures": compat,
            "generating_set_relation": gen.relation,
            "tilde_ist_rank": gen.rank_a,
            "j2_ist_intersection": [inter, dim_ist, extra],
            "pass": good,
        })
    return out, ok


COMMANDS = {
    "ist": cmd_ist,
    "icf": cmd_icf,
    "ideal-compare": cmd_ideal_compare,
    "hilbert": cmd_hilbert,
    "pentagon-check": cmd_pentagon_check,
    "two-cycle-check": cmd_two_cycle_check,
    "classify": cmd_classify,
    "equivalence": cmd_equivalence,
    "mzv": cmd_mzv,
    "kz-witness": cmd_kz_witness,
    "key-formula": cmd_key_formula,
    "bar-selftest": cmd_bar_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", "--weight", dest="degree", type=int, help="single degree/weight")
    common.add_argument("--max-degree", "--max-weight", dest="max_degree", type=int, help="run degrees up to this bound")
    common.add_argument("--digits", type=int, default=60, help="decimal digits for numerics (default 60)")
    common.add_argument("--series", help="JSON file holding a truncated series")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", help="cache directory (overrides CONFLUENCE_CACHE_DIR)")
    common.add_argument("--threads", type=int, default=1, help="worker cap (computations run single-threaded)")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", default="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")

    parser = argparse.ArgumentParser(prog="pentaconf", description="Confluence relations and the pentagon equation, checked degree by degree.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("ist", "icf"):
            p.add_argument("--a0", type=int, choices=(0, 1), default=0, help="boundary letter for the derivations")
        if name == "hilbert":
            p.add_argument("--reference-limit", type=int, default=5, help="highest degree for the row-reduction route")
        if name == "pentagon-check":
            p.add_argument("--kind", choices=("pentagon", "p15342"), default="pentagon")
        if name == "classify":
            p.add_argument("--expect", choices=("M_like", "GRT1_like", "neither"))
        if name == "mzv":
            p.add_argument("index", nargs="*", type=int, help="index k1 k2 ... (k1 >= 2)")
    return parser


def _render_text(report: dict) -> str:
    lines = ["%s: %s" % (report["command"], "PASS" if report["pass"] else "FAIL")]
    for item in report["results"]:
        lines.append(json.dumps(item, sort_keys=True))
    if "timing_seconds" in report:
        lines.append("time: %.2fs" % report["timing_seconds"])
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.cache_dir:
        cache.set_cache_dir(args.cache_dir)
    start = time.perf_counter()
    try:
        results, passed = COMMANDS[args.command](args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print("environment error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "out", "timing")}
    report = {"command": args.command, "parameters": params, "results": results, "pass": bool(passed)}
    elapsed = time.perf_counter() - start
    if args.timing:
        report["timing_seconds"] = round(elapsed, 3)
    _progress("%s finished in %.2fs" % (args.command, elapsed))
    text = json.dumps(report, indent=2, sort_keys=True) + "\n" if args.format == "json" else _render_text(report)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print("environment error: %s" % exc, file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())
