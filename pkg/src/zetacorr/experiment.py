"""Config-driven batch runs: stanzas of measured-versus-predicted reports plus plot-data CSVs.

A config is a TOML file with a ``[run]`` table of shared settings, a
``[tolerances]`` table and a list of ``[[stanza]]`` tables.  Each stanza
names its ``kind`` and may override any shared setting.  Outputs are CSV
files (RFC 4180, CRLF) and ``summary.json`` with sorted keys.  Nothing in
the outputs depends on wall-clock time, so identical configs give identical
bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import arith, explicit, ordsums, paircorr, weights, zeros
from .exceptions import ConfigError, StanzaError, ZetacorrError
from .reports import check_report, make_report
from .weights import WeightParams

__all__ = [
    "ExperimentConfig",
    "Table",
    "RunBundle",
    "DEFAULT_TOLERANCES",
    "STANZA_KINDS",
    "load_config",
    "parse_config",
    "run_experiment",
    "emit_plot_data",
    "write_bundle",
]

# shipped defaults, one per acceptance check
DEFAULT_TOLERANCES = {
    "weights": 1e-12,
    "kernel_duality": 1e-7,
    "explicit": 1e-6,
    "theorem1": 0.25,
    "spike_ratio": 0.2,
    "convolution": 0.25,
    "convolution_spread": 0.15,
    "cardinality": 0.35,
    "delta_ratio": 0.25,
    "theorem2_factor": 2.0,
    "theorem2_factor_high_mu": 3.0,
    "gonek": 10.0,
    "phi": 10.0,
    "lemma": 0.25,
}

SHARED_KEYS = {
    "zeros": str,
    "synthetic": dict,
    "output": str,
    "T": list,
    "mu": list,
    "params": list,
    "alpha": list,
    "window": float,
    "jobs": int,
}


@dataclass(frozen=True)
class ExperimentConfig:
    zeros: str | None
    synthetic: dict | None
    output: str
    base_dir: str
    tolerances: dict
    stanzas: tuple
    jobs: int = 1

    def tolerance(self, key):
        return float(self.tolerances[key])


@dataclass
class Table:
    name: str
    header: list
    rows: list = field(default_factory=list)


@dataclass
class RunBundle:
    reports: list  # (stanza name, AsymptoticReport)
    tables: list
    catalog_digest: str = ""

    @property
    def n_passed(self):
        return sum(r.passed for _, r in self.reports)

    def summary(self):
        return {
            "catalog": self.catalog_digest,
            "n_reports": len(self.reports),
            "n_passed": self.n_passed,
            "n_failed": len(self.reports) - self.n_passed,
            "reports": [dict(_clean(r.as_dict()), stanza=s) for s, r in self.reports],
            "tables": [t.name for t in self.tables],
        }


# ---------------------------------------------------------------------------
# config
# ---------------------------------------------------------------------------

def _number_list(value, name, where, integer=False):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where}: {name} must be a non-empty list")
    for v in value:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{where}: {name} entries must be numbers, got {v!r}")
        if integer and int(v) != v:
            raise ConfigError(f"{where}: {name} entries must be integers, got {v!r}")
    return [int(v) for v in value] if integer else [float(v) for v in value]


def _validate_stanza(st, shared, where):
    if not isinstance(st, dict):
        raise ConfigError(f"{where}: stanza must be a table")
    kind = st.get("kind")
    if kind not in STANZA_KINDS:
        raise ConfigError(f"{where}: unknown kind {kind!r}; expected one of {sorted(STANZA_KINDS)}")
    merged = dict(shared)
    merged.update(st)
    merged.setdefault("name", kind)
    for key in ("T", "alpha", "x", "t", "nu", "n", "k_list"):
        if key in merged:
            merged[key] = _number_list(merged[key], key, where)
    if "mu" in merged:
        merged["mu"] = _number_list(merged["mu"], "mu", where, integer=True)
    if "params" in merged:
        ps = merged["params"]
        if not isinstance(ps, list) or not ps:
            raise ConfigError(f"{where}: params must be a non-empty list of [nu, k] pairs")
        out = []
        for pr in ps:
            if not isinstance(pr, list) or len(pr) != 2:
                raise ConfigError(f"{where}: params entries must be [nu, k], got {pr!r}")
            try:
                out.append(WeightParams(float(pr[0]), pr[1]))
            except (ZetacorrError, TypeError) as exc:
                raise ConfigError(f"{where}: bad params {pr!r}: {exc}") from None
        merged["params"] = out
    if "window" in merged:
        w = merged["window"]
        if isinstance(w, bool) or not isinstance(w, (int, float)) or not w > 0:
            raise ConfigError(f"{where}: window must be a positive number")
        merged["window"] = float(w)
    for key in STANZA_KINDS[kind][1]:
        if key not in merged:
            raise ConfigError(f"{where}: stanza kind {kind!r} needs {key!r}")
    return merged


def parse_config(data, base_dir="."):
    """Validate a decoded config mapping and return an :class:`ExperimentConfig`."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a table")
    unknown = set(data) - {"run", "tolerances", "stanza"}
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}")
    run = data.get("run", {})
    if not isinstance(run, dict):
        raise ConfigError("[run] must be a table")
    for key, value in run.items():
        if key not in SHARED_KEYS:
            raise ConfigError(f"[run]: unknown key {key!r}")
        typ = SHARED_KEYS[key]
        if typ is float and isinstance(value, int) and not isinstance(value, bool):
            continue
        if not isinstance(value, typ):
            raise ConfigError(f"[run]: {key} must be {typ.__name__}")
    if ("zeros" in run) == ("synthetic" in run):
        raise ConfigError("[run]: give exactly one of 'zeros' or 'synthetic'")
    if "synthetic" in run and run["synthetic"].get("kind") not in ("independent-toy", "poisson", "unfolded-model"):
        raise ConfigError("[run]: synthetic.kind must be independent-toy, poisson or unfolded-model")
    tol = dict(DEFAULT_TOLERANCES)
    extra = data.get("tolerances", {})
    if not isinstance(extra, dict):
        raise ConfigError("[tolerances] must be a table")
    for key, value in extra.items():
        if key not in DEFAULT_TOLERANCES:
            raise ConfigError(f"[tolerances]: unknown key {key!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            raise ConfigError(f"[tolerances]: {key} must be a nonnegative number")
        tol[key] = float(value)
    shared = {k: v for k, v in run.items() if k not in ("zeros", "synthetic", "output", "jobs")}
    stanzas = data.get("stanza", [])
    if not isinstance(stanzas, list) or not stanzas:
        raise ConfigError("config needs at least one [[stanza]]")
    checked = [_validate_stanza(st, shared, f"stanza {i}") for i, st in enumerate(stanzas)]
    names = [s["name"] for s in checked]
    if len(set(names)) != len(names):
        raise ConfigError(f"stanza names must be unique, got {names}")
    jobs = int(run.get("jobs", 1))
    if jobs < 1:
        raise ConfigError("[run]: jobs must be at least 1")
    return ExperimentConfig(
        zeros=run.get("zeros"),
        synthetic=run.get("synthetic"),
        output=run.get("output", "out"),
        base_dir=str(base_dir),
        tolerances=tol,
        stanzas=tuple(checked),
        jobs=jobs,
    )


def load_config(path):
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return parse_config(data, base_dir=path.parent)


def _load_catalog(cfg):
    if cfg.synthetic is not None:
        s = cfg.synthetic
        return zeros.synthetic_catalog(s["kind"], int(s.get("seed", 0)), float(s.get("t_max", 100.0)), float(s.get("scale", 1.0)))
    path = Path(cfg.zeros)
    if not path.is_absolute():
        path = Path(cfg.base_dir) / path
    return zeros.load_zeros(path)


# ---------------------------------------------------------------------------
# stanzas: each returns (reports, tables)
# ---------------------------------------------------------------------------

def _stanza_figure1(st, cat, cfg):
    tol = cfg.tolerance("weights")
    u = np.linspace(-10.0, 10.0, 401)
    cols = [weights.general_weight(WeightParams(1.0, j), u) for j in range(4)]
    table = Table(f"{st['name']}_weights", ["u", "w10", "w11", "w12", "w13"])
    table.rows = [[float(u[i])] + [float(c[i]) for c in cols] for i in range(u.size)]
    reports = []
    for j in range(4):
        p = WeightParams(1.0, j)
        reports.append(make_report(f"w_1{j}(0)", weights.general_weight(p, 0.0), 1.0, tol, nu=1.0, k=j))
        even = float(np.max(np.abs(cols[j] - cols[j][::-1])))
        reports.append(make_report(f"w_1{j} evenness", 1.0 + even, 1.0, tol, nu=1.0, k=j))
    return reports, [table]


def _stanza_kernel_duality(st, cat, cfg):
    tol = cfg.tolerance("kernel_duality")
    table = Table(f"{st['name']}_kernel", ["nu", "k", "delta", "quadrature", "closed_form", "rel_discrepancy"])
    reports = []
    for p in st["params"]:
        for d in st.get("delta", [0.0, 0.5, 1.0, 2.0, 5.0]):
            r = weights.kernel_product_integral(p, d, rtol=math.inf, details=True)
            table.rows.append([p.nu, p.k, float(d), r.quadrature, r.closed_form, r.rel_discrepancy])
            scale = weights.kernel_product_integral(p, 0.0)
            # measured and predicted shifted by the scale so rel_err is the scale-relative discrepancy
            reports.append(make_report(f"kernel[nu={p.nu},k={p.k},delta={d}]", scale + r.quadrature - r.closed_form, scale, tol, nu=p.nu, k=p.k, delta=float(d)))
    return reports, [table]


def _stanza_explicit(st, cat, cfg):
    tol = cfg.tolerance("explicit")
    table = Table(
        f"{st['name']}_identity",
        ["x", "t", "nu", "k", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "zero_tail_bound", "dirichlet_tail_bound"],
    )
    reports = []
    k = int(st.get("k", 0))
    for nu in st["nu"]:
        for x in st["x"]:
            for t in st["t"]:
                r = explicit.identity_residual(cat, x, t, nu, k, tol=tol)
                table.rows.append([x, t, nu, k, r.lhs.real, r.lhs.imag, r.rhs.real, r.rhs.imag, r.residual, r.zero_tail_bound, r.dirichlet_tail_bound])
                # predicted = 1 + |rhs| and measured = predicted + residual: rel_err is the scaled residual
                pred = 1 + abs(r.rhs)
                reports.append(make_report(f"explicit[x={x},t={t},nu={nu},k={k}]", pred + r.residual, pred, tol, x=x, t=t, nu=nu, k=k))
    return reports, [table]


def _stanza_theorem1(st, cat, cfg):
    tol = cfg.tolerance("theorem1")
    window = st.get("window", paircorr.DEFAULT_WINDOW)
    reports, tables = [], []
    for T in st["T"]:
        cat.require(T)
        pairs = paircorr.pair_differences(cat.upto(T), window)
        for p in st["params"]:
            table = Table(f"{st['name']}_F_nu{p.nu:g}_k{p.k}_T{T:g}", ["alpha", "measured", "predicted"])
            for a in st["alpha"]:
                est = paircorr.f_general(cat, p, T ** a, T, window, pairs=pairs)
                pred = paircorr.theorem1_prediction(p, a, T)
                table.rows.append([a, est.value, pred])
                assert_it = p.k == 0 and st.get("assert_from", 0.3) <= a <= st.get("assert_to", 0.9)
                reports.append(
                    make_report(
                        f"F[nu={p.nu},k={p.k}]({a})", est.value, pred, tol if assert_it else math.inf,
                        error_scale=est.tail_bound + est.phase_error, T=T, alpha=a, nu=p.nu, k=p.k, catalog=cat.digest,
                    )
                )
            tables.append(table)
        spike = st.get("spike_alpha")
        if spike is not None:
            hi = paircorr.f_general(cat, WeightParams(1.0, 1), T ** spike, T, window, pairs=pairs).value
            lo = paircorr.f_general(cat, WeightParams(1.0, 0), T ** spike, T, window, pairs=pairs).value
            theory = paircorr.theorem1_prediction(WeightParams(1.0, 1), spike, T) / paircorr.theorem1_prediction(WeightParams(1.0, 0), spike, T)
            reports.append(
                make_report(
                    f"F11/F10({spike}) below {cfg.tolerance('spike_ratio')}", hi / lo, cfg.tolerance("spike_ratio"), 1.0,
                    mode="upper", T=T, alpha=spike, predicted_ratio=theory,
                )
            )
    return reports, tables


def _stanza_convolution(st, cat, cfg):
    tol = cfg.tolerance("convolution")
    kernel = paircorr.kernel_pair(st.get("kernel", "fejer"), float(st.get("lam", 0.5)))
    window = st.get("window", paircorr.DEFAULT_WINDOW)
    table = Table(f"{st['name']}_convolution", ["nu", "k", "T", "lhs", "rhs", "predicted", "rel_err"])
    reports = []
    for T in st["T"]:
        values = []
        for p in st["params"]:
            rep = paircorr.convolution_consistency(cat, p, kernel, T, int(st.get("n_alpha", 200)), window, tol)
            table.rows.append([p.nu, p.k, T, rep.provenance["lhs"], rep.provenance["rhs"], rep.predicted, rep.rel_err])
            reports.append(rep)
            values.append(rep.measured)
        if len(values) > 1:
            spread = max(values) / min(values) - 1 if min(values) > 0 else math.inf
            reports.append(
                make_report(f"convolution spread over weights at T={T:g}", max(values), min(values), cfg.tolerance("convolution_spread"), T=T, spread=spread)
            )
    return reports, [table]


def _stanza_cardinality(st, cat, cfg):
    tol = cfg.tolerance("cardinality")
    table = Table(f"{st['name']}_cardinality", ["mu", "T", "measured", "predicted", "rel_err"])
    reports = []
    for mu in st["mu"]:
        errs = []
        for T in st["T"]:
            cat.require(T)
            total = ordsums.total_by_recursion(cat, mu, T)
            ms = ordsums.build_sum_multiset(cat, mu, T) if mu <= 2 else None
            if ms is not None:
                rep = ordsums.check_cardinality(ms, tol)
                reports.append(check_report(f"|Z_{mu}| recursion vs multiset at T={T:g}", total == ms.total, T=T, mu=mu))
            else:
                rep = make_report(f"|Z_{mu}(T)|", total, ordsums.cardinality_prediction(mu, T), tol, mu=mu, T=T)
            reports.append(rep)
            errs.append(rep.rel_err)
            table.rows.append([mu, T, rep.measured, rep.predicted, rep.rel_err])
        trend = all(b <= a for a, b in zip(errs, errs[1:]))
        reports.append(check_report(f"|Z_{mu}| relative error non-increasing", trend, rel_errs=errs))
    prefix = int(st.get("prefix", 300))
    g = cat.ordinates[:prefix]
    if g.size:
        T = float(g[-1])
        sub = zeros.ZeroCatalog(g, T, cat.source, cat.precision_hint, cat.genuine)
        for mu in (1, 2, 3):
            rec = ordsums.total_by_recursion(sub, mu, T)
            brute = ordsums.build_sum_multiset(sub, mu, T).total
            reports.append(check_report(f"recursion identity mu={mu} on {g.size} ordinates", rec == brute, recursion=rec, multiset=brute))
    return reports, [table]


def _stanza_delta(st, cat, cfg):
    import warnings

    reports = []
    table = Table(f"{st['name']}_delta", ["T", "delta2", "z2", "N_half", "delta2_over_N2"])
    tol = float(st.get("merge_tol", 2e-8))
    for T in st["T"]:
        cat.require(T)
        ms = ordsums.build_sum_multiset(cat, 2, T, merge_tol=tol)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            d = ordsums.delta_mu(ms)
        stable = not any(issubclass(w.category, ordsums.ToleranceSensitivityWarning) for w in caught)
        half = cat.count(T / 2)
        n = cat.count(T)
        table.rows.append([T, d, ms.total, half, d / n ** 2])
        reports.append(make_report(f"Delta_2 = 2|Z_2| - N(T/2) at T={T:g}", d, 2 * ms.total - half, 0.0, T=T, merge_tol=tol, tolerance_stable=stable))
        reports.append(make_report(f"Delta_2 / N(T)^2 at T={T:g}", d / n ** 2, 1.0, math.inf, T=T, asserted=False))
    toy = zeros.synthetic_catalog("independent-toy", t_max=4.0)
    tms = ordsums.build_sum_multiset(toy, 2, 4.0, merge_tol=1e-9)
    reports.append(make_report("Delta_2 on the toy set", ordsums.delta_mu(tms), 6.0, 0.0))
    return reports, [table]


def _stanza_theorem2(st, cat, cfg):
    reports, tables = [], []
    window = st.get("window", 50.0)
    for mu in st["mu"]:
        for T in st["T"]:
            cat.require(T)
            if mu <= 3:
                ms = ordsums.build_sum_multiset(cat, mu, T)
                factor = cfg.tolerance("theorem2_factor")
            else:
                ms = ordsums.build_sum_histogram(cat, mu, T, float(st.get("bin_width", 1e-3)))
                factor = cfg.tolerance("theorem2_factor_high_mu")
            table = Table(f"{st['name']}_G{mu}_T{T:g}", ["alpha", "measured", "predicted"])
            for a in st["alpha"]:
                est = ordsums.g_mu(ms, T ** a, T, window)
                pred = ordsums.theorem2_prediction(mu, a, T, strict=False)
                table.rows.append([a, est.value, pred])
                reports.append(
                    make_report(
                        f"G_{mu}({a}) at T={T:g}", est.value, pred, factor - 1, error_scale=est.tail_bound + est.phase_error,
                        mode="factor", mu=mu, T=T, alpha=a, flags_binned=ms.binned,
                    )
                )
            tables.append(table)
    return reports, tables


def _stanza_gonek(st, cat, cfg):
    reports = []
    table = Table(f"{st['name']}_gonek", ["n", "T", "S_re", "S_im", "lambda_T", "error_scale", "scaled_error"])
    for T in st["T"]:
        cat.require(T)
        for n in st["n"]:
            S, c = arith.gonek_sum(cat, int(n), T)
            dev = abs(S - c.lambda_n * T) / c.error_scale
            table.rows.append([int(n), T, S.real, S.imag, c.lambda_n * T, c.error_scale, dev])
            reports.append(make_report(f"S({int(n)}, {T:g})", dev, cfg.tolerance("gonek"), 1.0, mode="upper", n=int(n), T=T))
    phi_T = st.get("phi_T")
    if phi_T is not None:
        cat.require(phi_T)
        ms = ordsums.build_sum_multiset(cat, 2, phi_T)
        for n in st.get("phi_n", [2]):
            val = arith.phi_sum(ms, int(n), 0)
            main = arith.phi_main_term(2, 0, int(n), phi_T)
            scale = arith.phi_error_scale(2, 0, int(n), phi_T)
            reports.append(make_report(f"Phi(2,0) n={int(n)} T={phi_T:g}", abs(val - main) / scale, cfg.tolerance("phi"), 1.0, mode="upper", n=int(n), T=phi_T))
    return reports, [table]


def _stanza_lemmas(st, cat, cfg):
    tol = cfg.tolerance("lemma")
    xs = st["x"]
    table = Table(f"{st['name']}_lemmas", ["lemma", "x", "exact", "main", "ratio", "error_bound"])
    cases = []
    for a in (0, 1):
        for b in (0, 2):
            cases.append((f"beef(a={a},b={b})", lambda x, a=a, b=b: arith.lemma_beef(x, a, b)))
    for k in (1, 2, 3):
        cases.append((f"wagyu(k={k})", lambda x, k=k: arith.lemma_wagyu(x, k, 0.0)))
    for a in (2, 3):
        cases.append((f"steak(a={a})", lambda x, a=a: arith.lemma_steak(x, a, 0)))
        cases.append((f"sirloin(k=1,a={a})", lambda x, a=a: arith.lemma_sirloin(x, 1, a)))
    reports = []
    for name, fn in cases:
        dev = []
        for x in xs:
            r = fn(x)
            table.rows.append([name, x, r.exact, r.main, r.ratio, r.error_bound])
            dev.append(abs(r.ratio - 1))
            last = x == xs[-1]
            reports.append(make_report(f"{name} at x={x:g}", r.exact, r.main, tol if last else math.inf, x=x, error_bound=r.error_bound))
        trend = all(b <= a for a, b in zip(dev, dev[1:]))
        reports.append(check_report(f"{name} ratio approaches 1 monotonically", trend, deviations=dev))
    return reports, [table]


STANZA_KINDS = {
    # kind: (runner, required keys)
    "figure-1": (_stanza_figure1, ()),
    "kernel-duality": (_stanza_kernel_duality, ("params",)),
    "explicit": (_stanza_explicit, ("x", "t", "nu")),
    "theorem-1": (_stanza_theorem1, ("T", "params", "alpha")),
    "convolution": (_stanza_convolution, ("T", "params")),
    "cardinality": (_stanza_cardinality, ("T", "mu")),
    "delta": (_stanza_delta, ("T",)),
    "theorem-2": (_stanza_theorem2, ("T", "mu", "alpha")),
    "gonek": (_stanza_gonek, ("T", "n")),
    "lemmas": (_stanza_lemmas, ("x",)),
}


# ---------------------------------------------------------------------------
# running and writing
# ---------------------------------------------------------------------------

def _run_stanza(st, cat, cfg):
    runner = STANZA_KINDS[st["kind"]][0]
    try:
        return runner(st, cat, cfg)
    except ZetacorrError as exc:
        raise StanzaError(st["name"], exc) from exc


def run_experiment(cfg, catalog=None):
    """Run every stanza; results come back in config order whatever ``jobs`` is."""
    cat = _load_catalog(cfg) if catalog is None else catalog
    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(lambda st: _run_stanza(st, cat, cfg), cfg.stanzas))
    else:
        results = [_run_stanza(st, cat, cfg) for st in cfg.stanzas]
    reports, tables = [], []
    for st, (reps, tabs) in zip(cfg.stanzas, results):
        reports.extend((st["name"], r) for r in reps)
        tables.extend(tabs)
    return RunBundle(reports, tables, cat.digest)


def _clean(obj):
    """JSON-safe copy: non-finite floats as strings, numpy scalars as Python numbers."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _atomic_write(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def table_text(table):
    buf = io.StringIO()
    w = csv.writer(buf)  # excel dialect: RFC 4180 quoting, CRLF line ends
    w.writerow(table.header)
    for row in table.rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def emit_plot_data(bundle, outdir):
    """Write each table as ``<name>.csv``; returns the paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for t in bundle.tables:
        p = outdir / f"{t.name}.csv"
        _atomic_write(p, table_text(t))
        paths.append(p)
    return paths


def write_bundle(bundle, outdir):
    """CSV files plus ``reports.csv`` and ``summary.json``."""
    outdir = Path(outdir)
    paths = emit_plot_data(bundle, outdir)
    rep = Table("reports", ["stanza", "name", "measured", "predicted", "rel_err", "tolerance", "error_scale", "mode", "pass"])
    for s, r in bundle.reports:
        rep.rows.append([s, r.name, r.measured, r.predicted, r.rel_err, r.tolerance, r.error_scale, r.mode, r.passed])
    _atomic_write(outdir / "reports.csv", table_text(rep))
    _atomic_write(outdir / "summary.json", json.dumps(_clean(bundle.summary()), sort_keys=True, indent=2) + "\n")
    return paths + [outdir / "reports.csv", outdir / "summary.json"]
