"""Command line entry point: ``zetacorr <verb> ...``.

``--out`` takes ``csv`` or ``json`` (write to stdout) or a file path (format
from the suffix, CSV unless it ends in ``.json``).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import arith, explicit, ordsums, paircorr, weights, zeros
from .exceptions import ZetacorrError
from .experiment import Table, _clean, load_config, run_experiment, table_text, write_bundle
from .weights import WeightParams


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def float_list(text):
    """'1,2,2.718' -> [1.0, 2.0, 2.718]."""
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def grid(text):
    """'lo:hi:step' (inclusive of hi up to rounding) or a comma list."""
    if ":" not in text:
        return float_list(text)
    try:
        lo, hi, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError("grid needs step > 0 and hi >= lo")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(n + 1)]


def _emit(table, out):
    if out in ("csv", "-"):
        sys.stdout.write(table_text(table))
        return
    rows = [dict(zip(table.header, r)) for r in table.rows]
    if out == "json":
        sys.stdout.write(json.dumps(_clean(rows), sort_keys=True, indent=2) + "\n")
        return
    path = Path(out)
    if path.suffix == ".json":
        path.write_text(json.dumps(_clean(rows), sort_keys=True, indent=2) + "\n")
    else:
        path.write_text(table_text(table), newline="")
    print(f"wrote {len(table.rows)} rows to {path}", file=sys.stderr)


def _catalog(args):
    return zeros.load_zeros(args.zeros, t_max=getattr(args, "t_max", None))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_ingest(args):
    cat = _catalog(args)
    t = Table("ingest", ["source", "count", "first", "last", "t_max", "digest"])
    g = cat.ordinates
    t.rows.append([cat.source, g.size, float(g[0]) if g.size else math.nan, float(g[-1]) if g.size else math.nan, cat.t_max, cat.digest])
    if args.save:
        cat.save(args.save)
    _emit(t, args.out)


def cmd_find_zeros(args):
    cat = zeros.find_zeros(args.t_max)
    if args.save:
        cat.save(args.save)
    t = Table("zeros", ["n", "gamma"])
    t.rows = [[i + 1, float(g)] for i, g in enumerate(cat.ordinates)]
    _emit(t, args.out)


def cmd_weights(args):
    u = np.array(grid(args.u_grid))
    ps = [WeightParams(args.nu, k) for k in args.k]
    if len(ps) == 1:
        header = ["u", "w"]
    else:
        header = ["u"] + [f"w{args.nu:g}{p.k}" for p in ps]
    t = Table("weights", header)
    cols = [weights.general_weight(p, u) for p in ps]
    t.rows = [[float(u[i])] + [float(c[i]) for c in cols] for i in range(u.size)]
    _emit(t, args.out)


def cmd_paircorr(args):
    cat = _catalog(args)
    p = WeightParams(args.nu, args.k)
    pairs = paircorr.pair_differences(cat.upto(args.T), args.window)
    t = Table("paircorr", ["alpha", "x", "value", "prediction", "rel_err", "tail_bound", "imag_residual"])
    for a in args.alpha_grid:
        x = args.T ** a
        est = paircorr.f_general(cat, p, x, args.T, args.window, pairs=pairs)
        pred = paircorr.theorem1_prediction(p, a, args.T) if 0 <= a <= 1 else math.nan
        rel = abs(est.value - pred) / abs(pred) if pred else math.nan
        t.rows.append([a, x, est.value, pred, rel, est.tail_bound + est.phase_error, est.imag_residual])
    _emit(t, args.out)


def _multiset(args, cat):
    if args.from_file:
        return ordsums.SumMultiset.from_text(Path(args.from_file).read_text())
    if args.histogram:
        return ordsums.build_sum_histogram(cat, args.mu, args.T, args.bin_width)
    return ordsums.build_sum_multiset(cat, args.mu, args.T, merge_tol=args.merge_tol)


def cmd_ordsums(args):
    cat = None if args.from_file else _catalog(args)
    ms = _multiset(args, cat)
    act = args.action
    if act == "build":
        text = ms.to_text()
        if args.out in ("csv", "-", "json"):
            sys.stdout.write(text)
        else:
            Path(args.out).write_text(text)
        return
    if act == "cardinality":
        r = ordsums.check_cardinality(ms)
        t = Table("cardinality", ["mu", "T", "measured", "predicted", "rel_err", "flags"])
        t.rows.append([ms.mu, ms.T, r.measured, r.predicted, r.rel_err, ";".join(r.flags)])
    elif act == "moments":
        t = Table("moments", ["mu", "T", "k", "exact", "main", "ratio"])
        for k in args.k:
            e, m = ordsums.moments(ms, int(k))
            t.rows.append([ms.mu, ms.T, int(k), e, m, e / m])
    elif act == "delta":
        t = Table("delta", ["mu", "T", "merge_tol", "delta", "total"])
        t.rows.append([ms.mu, ms.T, ms.merge_tol, ordsums.delta_mu(ms), ms.total])
    elif act == "gmu":
        t = Table("gmu", ["alpha", "measured", "predicted", "tail_bound", "phase_error"])
        for a in args.alpha_grid:
            est = ordsums.g_mu(ms, ms.T ** a, ms.T, args.window, args.method)
            try:
                pred = ordsums.theorem2_prediction(ms.mu, a, ms.T, strict=False)
            except ZetacorrError:
                pred = math.nan
            t.rows.append([a, est.value, pred, est.tail_bound, est.phase_error])
    elif act == "nmu":
        t = Table("nmu", ["u", "N_mu"])
        for u in args.u:
            t.rows.append([u, ordsums.close_pair_count(ms, u)])
    elif act == "caltech":
        e, m = ordsums.stieltjes_weighted_integral(cat, args.a, args.b, args.c, args.d, args.T)
        t = Table("caltech", ["a", "b", "c", "d", "T", "exact", "main", "ratio"])
        t.rows.append([args.a, args.b, args.c, args.d, args.T, e, m, e / m])
    elif act == "logtau":
        t = Table("logtau", ["mu", "T", "t", "exact", "main", "ratio"])
        for tt in args.t:
            e, m = ordsums.log_tau_sum(ms, tt)
            t.rows.append([ms.mu, ms.T, tt, e, m, e / m])
    _emit(t, args.out)


def cmd_arith(args):
    if args.action == "lemma":
        t = Table("lemma", ["name", "x", "exact", "main", "ratio", "error_scale"])
        for x in args.x:
            if args.which == "beef":
                r = arith.lemma_beef(x, args.a, args.b)
            elif args.which == "steak":
                r = arith.lemma_steak(x, args.a, args.b)
            elif args.which == "wagyu":
                r = arith.wagyu_harmonic(x, args.k) if args.a == -1 else arith.lemma_wagyu(x, args.k, args.a)
            else:
                r = arith.lemma_sirloin(x, args.k, args.a, loglog=args.loglog)
            t.rows.append([args.which, x, r.exact, r.main, r.ratio, r.error_bound])
    elif args.action == "gonek":
        cat = _catalog(args)
        t = Table("gonek", ["n", "T", "exact_re", "exact_im", "main", "scaled_error", "error_scale"])
        for n in args.n:
            S, c = arith.gonek_sum(cat, int(n), args.T)
            main = c.lambda_n * args.T
            t.rows.append([int(n), args.T, S.real, S.imag, main, abs(S - main) / c.error_scale, c.error_scale])
    else:
        cat = _catalog(args)
        ms = ordsums.build_sum_multiset(cat, args.mu, args.T)
        t = Table("phi", ["name", "T", "exact", "main", "ratio", "error_scale"])
        for n in args.n:
            val = arith.phi_sum(ms, int(n), args.k)
            main = arith.phi_main_term(args.mu, args.k, int(n), args.T)
            scale = arith.phi_error_scale(args.mu, args.k, int(n), args.T)
            t.rows.append([f"Phi(mu={args.mu},k={args.k},n={int(n)})", args.T, val.real, main, val.real / main, scale])
    _emit(t, args.out)


def cmd_explicit(args):
    cat = _catalog(args)
    t = Table(
        "explicit",
        ["x", "t", "nu", "k", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "zero_tail_bound", "dirichlet_tail_bound", "pass"],
    )
    for nu in args.nu:
        for x in args.x_grid:
            for tt in args.t_grid:
                r = explicit.identity_residual(cat, x, tt, nu, args.k, window=args.window)
                t.rows.append([x, tt, nu, args.k, r.lhs.real, r.lhs.imag, r.rhs.real, r.rhs.imag, r.residual, r.zero_tail_bound, r.dirichlet_tail_bound, r.passed])
    _emit(t, args.out)


def cmd_run(args):
    cfg = load_config(args.config)
    bundle = run_experiment(cfg)
    out = Path(args.output) if args.output else Path(cfg.base_dir) / cfg.output
    write_bundle(bundle, out)
    print(f"{bundle.n_passed}/{len(bundle.reports)} reports passed; outputs in {out}")
    return 0 if bundle.n_passed == len(bundle.reports) or not args.strict else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="zetacorr", description="Pair correlation of zeta zeros and sums of ordinates.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, need_zeros=True):
        if need_zeros:
            p.add_argument("--zeros", required=True, help="zero table, one ordinate per line")
        p.add_argument("--out", default="csv", help="csv, json, or an output path")

    p = sub.add_parser("ingest", help="validate a zero table")
    common(p)
    p.add_argument("--t-max", type=float)
    p.add_argument("--save", help="write the normalized table here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("find-zeros", help="locate zeros on the critical line up to t_max")
    common(p, need_zeros=False)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--save")
    p.set_defaults(func=cmd_find_zeros)

    p = sub.add_parser("weights", help="weight-curve CSV")
    common(p, need_zeros=False)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--k", type=int, nargs="+", default=[0, 1, 2, 3])
    p.add_argument("--u-grid", default="-10:10:0.05")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("paircorr", help="F_{nu,k}(alpha) on an alpha grid")
    common(p)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--alpha-grid", type=grid, default=grid("0:1:0.05"))
    p.add_argument("--window", type=float, default=paircorr.DEFAULT_WINDOW)
    p.set_defaults(func=cmd_paircorr)

    p = sub.add_parser("ordsums", help="multisets of ordinate sums")
    p.add_argument("action", choices=["build", "cardinality", "moments", "delta", "gmu", "nmu", "caltech", "logtau"])
    p.add_argument("--zeros")
    p.add_argument("--out", default="csv")
    p.add_argument("--mu", type=int, default=2)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--merge-tol", type=float)
    p.add_argument("--histogram", action="store_true", help="stream into bins instead of materializing")
    p.add_argument("--bin-width", type=float, default=1e-3)
    p.add_argument("--from-file", help="read a multiset written by 'build'")
    p.add_argument("--k", type=float_list, default=[0.0])
    p.add_argument("--alpha-grid", type=grid, default=grid("0:0.5:0.05"))
    p.add_argument("--window", type=float, default=50.0)
    p.add_argument("--method", choices=["auto", "exact", "binned"], default="auto")
    p.add_argument("--u", type=float_list, default=[0.5, 1.0, 2.0])
    p.add_argument("--t", type=float_list, default=[0.0])
    for name in ("a", "b", "c", "d"):
        p.add_argument(f"--{name}", type=int, default=0)
    p.set_defaults(func=cmd_ordsums)

    p = sub.add_parser("arith", help="prime-power sums and Gonek sums")
    p.add_argument("action", choices=["lemma", "gonek", "phi"])
    p.add_argument("--zeros")
    p.add_argument("--out", default="csv")
    p.add_argument("--which", choices=["beef", "steak", "wagyu", "sirloin"], default="beef")
    p.add_argument("--x", type=float_list, default=[1e3, 1e4, 1e5, 1e6])
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--loglog", action="store_true")
    p.add_argument("--n", type=float_list, default=[2, 3, 4, 5, 7, 8, 9, 16])
    p.add_argument("--T", type=float, default=1e4)
    p.add_argument("--mu", type=int, default=2)
    p.set_defaults(func=cmd_arith)

    p = sub.add_parser("explicit-check", help="both sides of the twisted explicit formula")
    common(p)
    p.add_argument("--x-grid", type=float_list, default=float_list("1,2,2.718,10,100"))
    p.add_argument("--t-grid", type=float_list, default=float_list("0,25,100,500"))
    p.add_argument("--nu", type=float_list, default=float_list("1,1.5"))
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--window", type=float, help="sum only |gamma -+ t| <= window (default: whole table)")
    p.set_defaults(func=cmd_explicit)

    p = sub.add_parser("run", help="run a TOML experiment config")
    p.add_argument("config")
    p.add_argument("--output", help="output directory (default: the config's run.output)")
    p.add_argument("--strict", action="store_true", help="exit 1 if any report fails")
    p.set_defaults(func=cmd_run)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verb in ("ordsums", "arith") and getattr(args, "zeros", None) is None:
        needs = not (args.verb == "ordsums" and args.from_file) and not (args.verb == "arith" and args.action == "lemma")
        if needs:
            print("error: --zeros is required for this action", file=sys.stderr)
            return 2
    try:
        return args.func(args) or 0
    except ZetacorrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
