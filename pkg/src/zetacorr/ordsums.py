"""Multisets of ordinate sums and the statistics built on them.

The multiset of ordered mu-tuples of ordinates with sum <= T is stored as
sorted (value, count) pairs.  Sums closer than ``merge_tol`` are merged.  Large
cases are streamed into a fixed-width histogram instead.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import CoverageError, DomainError, MemoryBudgetError, ParseError
from .paircorr import CorrelationEstimate, _check_window, _normalization, _weighted_pair_sum, pair_differences
from .reports import make_report
from .weights import WeightParams, general_weight

__all__ = [
    "SumMultiset",
    "ToleranceSensitivityWarning",
    "build_sum_multiset",
    "build_sum_histogram",
    "total_by_recursion",
    "enumerate_tuples",
    "nt_constant",
    "cardinality_prediction",
    "check_cardinality",
    "moments",
    "moment_prediction",
    "delta_mu",
    "g_mu",
    "theorem2_prediction",
    "theorem3_bound",
    "close_pair_count",
    "stieltjes_weighted_integral",
    "caltech_main_term",
    "log_tau_sum",
    "specialized_main_term",
    "ENTRY_BUDGET",
]

TWO_PI = 2 * math.pi
ENTRY_BUDGET = 30_000_000


class ToleranceSensitivityWarning(UserWarning):
    """Halving the merge tolerance changes an equal-sum count."""


@dataclass(frozen=True, eq=False)
class SumMultiset:
    mu: int
    T: float
    values: np.ndarray
    counts: np.ndarray
    merge_tol: float
    built_from: str = ""
    genuine: bool = True
    precision_hint: float = 0.0
    bin_width: float = 0.0  # > 0 for histogram multisets: values are bin centres
    delta_half: int | None = field(default=None, repr=False)  # sum of count^2 at merge_tol / 2

    def __post_init__(self):
        for name in ("values", "counts"):
            arr = np.asarray(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def binned(self):
        return self.bin_width > 0

    def __len__(self):
        return self.values.size

    def to_text(self):
        head = [
            f"# mu: {self.mu}",
            f"# T: {self.T!r}",
            f"# merge_tol: {self.merge_tol!r}",
            f"# source: {self.built_from}",
        ]
        body = [f"{float(v)!r} {int(c)}" for v, c in zip(self.values, self.counts)]
        return "\n".join(head + body) + "\n"

    @classmethod
    def from_text(cls, text):
        meta = {}
        vals, cnts = [], []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                meta[key.strip()] = val.strip()
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'value count', got {line!r}", lineno)
            try:
                v, c = float(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"bad entry {line!r}", lineno) from None
            if vals and v <= vals[-1]:
                raise ParseError("values must be strictly ascending", lineno)
            vals.append(v)
            cnts.append(c)
        try:
            mu, T, tol = int(meta["mu"]), float(meta["T"]), float(meta["merge_tol"])
        except KeyError as exc:
            raise ParseError(f"missing header field {exc}") from None
        return cls(mu, T, np.array(vals), np.array(cnts, dtype=np.int64), tol, meta.get("source", ""))


def nt_constant(T):
    """T log T / 2 pi."""
    if T < 2:
        raise DomainError("T must be at least 2")
    return T * math.log(T) / TWO_PI


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _merge(values, counts, tol):
    """Sort and merge runs of values with consecutive gaps <= tol; returns merged arrays and the tol/2 diagonal."""
    order = np.argsort(values, kind="stable")
    v = values[order]
    c = counts[order]
    if v.size == 0:
        return v, c, 0

    def group(t):
        starts = np.r_[0, np.nonzero(np.diff(v) > t)[0] + 1]
        return starts, np.add.reduceat(c, starts)

    starts, merged = group(tol)
    half = group(tol / 2)[1]
    delta_half = int(np.sum(half.astype(object) ** 2)) if half.size < 10 else int(np.dot(half, half))
    return v[starts], merged, delta_half


def _level_one(catalog, T):
    g = catalog.upto(T)
    vals, cnts = np.unique(g, return_counts=True)
    return vals, cnts.astype(np.int64)


def _default_tol(catalog, mu):
    return 10 * mu * catalog.precision_hint if catalog.precision_hint > 0 else 1e-12


def build_sum_multiset(catalog, mu, T, merge_tol=None, budget=ENTRY_BUDGET):
    """The multiset of sums of ordered mu-tuples of ordinates with sum <= T.

    Built level by level: level m is level m-1 convolved with the ordinate
    list, keeping sums <= T and merging sums within ``merge_tol``.
    """
    if not 1 <= mu <= 4:
        raise DomainError("materialized multisets need 1 <= mu <= 4; use build_sum_histogram")
    catalog.require(T)
    tol = _default_tol(catalog, mu) if merge_tol is None else float(merge_tol)
    g, gc = _level_one(catalog, T)
    v, c = g.copy(), gc.copy()
    delta_half = int(np.dot(c, c))
    for _ in range(mu - 1):
        size = 0
        parts_v, parts_c = [], []
        for gamma, m in zip(g, gc):
            j = np.searchsorted(v, T - gamma, side="right")
            if j == 0:
                break
            size += j
            if size > budget:
                raise MemoryBudgetError(
                    f"more than {budget} entries for mu={mu}, T={T}; stream with build_sum_histogram"
                )
            parts_v.append(v[:j] + gamma)
            parts_c.append(c[:j] * m)
        if not parts_v:
            v, c = np.empty(0), np.empty(0, dtype=np.int64)
            delta_half = 0
            break
        v, c, delta_half = _merge(np.concatenate(parts_v), np.concatenate(parts_c), tol)
    return SumMultiset(
        mu,
        float(T),
        v,
        c,
        tol,
        catalog.digest,
        genuine=catalog.genuine,
        precision_hint=catalog.precision_hint,
        delta_half=delta_half,
    )


def build_sum_histogram(catalog, mu, T, bin_width=1e-3):
    """Stream the mu-tuple sums into bins of width ``bin_width``.

    Each ordinate is rounded to the nearest multiple of the bin width, so every
    stored sum is within mu * bin_width / 2 of its true value.  Sums are kept
    when their rounded value is <= T.
    """
    if mu < 1:
        raise DomainError("mu must be positive")
    catalog.require(T)
    b = float(bin_width)
    nb = int(math.floor(T / b)) + 1
    g = catalog.upto(T)
    idx = np.rint(g / b).astype(np.int64)
    idx = idx[idx < nb]
    base = np.bincount(idx, minlength=nb).astype(np.int64)
    h = base.copy()
    shifts, mult = np.unique(idx, return_counts=True)
    for _ in range(mu - 1):
        new = np.zeros(nb, dtype=np.int64)
        for s, m in zip(shifts, mult):
            if s >= nb:
                break
            new[s:] += m * h[: nb - s]
        h = new
    nz = np.nonzero(h)[0]
    return SumMultiset(
        mu,
        float(T),
        nz * b,
        h[nz],
        b,
        catalog.digest,
        genuine=catalog.genuine,
        precision_hint=catalog.precision_hint,
        bin_width=b,
    )


def total_by_recursion(catalog, mu, T):
    """|Z_mu(T)| from total_mu(T) = sum over gamma <= T of total_{mu-1}(T - gamma), without building sums."""
    g = catalog.upto(T)
    if mu == 1:
        return int(g.size)

    def rec(m, limit):
        if m == 1:
            return int(np.searchsorted(g, limit, side="right"))
        return sum(rec(m - 1, limit - x) for x in g[: np.searchsorted(g, limit, side="right")])

    return rec(mu, T)


def enumerate_tuples(ordinates, mu, T):
    """Brute-force list of sums of ordered mu-tuples with sum <= T (small inputs only)."""
    import itertools

    g = [float(x) for x in ordinates if x <= T]
    return sorted(sum(t) for t in itertools.product(g, repeat=mu) if sum(t) <= T)


# ---------------------------------------------------------------------------
# cardinality and moments
# ---------------------------------------------------------------------------

def cardinality_prediction(mu, T):
    """T^mu L^mu / ((2 pi)^mu mu!) with L = log T."""
    L = math.log(T)
    return (T * L / TWO_PI) ** mu / math.factorial(mu)


def _flags(ms):
    flags = []
    if not ms.genuine:
        flags.append("non-asymptotic")
    if ms.T < 14 * ms.mu:
        flags.append("below-14mu")
    if ms.binned:
        flags.append("binned")
    return tuple(flags)


def check_cardinality(ms, tolerance=math.inf):
    L = math.log(ms.T)
    extra = {}
    if ms.mu == 1:
        extra["refined_main"] = ms.T / TWO_PI * math.log(ms.T / (TWO_PI * math.e))
    return make_report(
        f"|Z_{ms.mu}(T)|",
        ms.total,
        cardinality_prediction(ms.mu, ms.T),
        tolerance=tolerance,
        error_scale=math.log(L) / L,
        flags=_flags(ms),
        mu=ms.mu,
        T=ms.T,
        source=ms.built_from,
        **extra,
    )


def moment_prediction(mu, k, T):
    if mu + k < 0:
        raise DomainError("need mu + k >= 0")
    L = math.log(T)
    if mu + k == 0:
        return mu * L ** (mu + 1) / (TWO_PI ** mu * math.factorial(mu + 1))
    return mu * T ** (mu + k) * L ** mu / (TWO_PI ** mu * (mu + k) * math.factorial(mu))


def moments(ms, k):
    """(sum over entries of count * value^k, main term)."""
    if ms.mu + k < 0:
        raise DomainError("need mu + k >= 0")
    if k == 0:
        exact = float(ms.total)
    else:
        exact = math.fsum(ms.counts * ms.values ** float(k))
    return exact, moment_prediction(ms.mu, k, ms.T)


def delta_mu(ms):
    """Number of ordered pairs of tuples with equal sums (to merge_tol): sum of count^2."""
    if ms.binned:
        warnings.warn("equal-sum count on a histogram counts bin collisions", ToleranceSensitivityWarning, stacklevel=2)
    c = ms.counts
    d = int(np.dot(c, c))
    if ms.delta_half is not None and ms.delta_half != d:
        warnings.warn(
            f"equal-sum count changes from {d} to {ms.delta_half} when merge_tol is halved",
            ToleranceSensitivityWarning,
            stacklevel=2,
        )
    return d


# ---------------------------------------------------------------------------
# G_mu
# ---------------------------------------------------------------------------

def _pair_mass_estimate(ms, window):
    density = ms.total / max(ms.T, 1.0)
    return ms.total * min(density * 2 * window, ms.total)


def g_mu(ms, x, T=None, window=50.0, method="auto", pair_limit=20_000_000):
    """G_mu(alpha, T) with alpha = log x / log T.

    ``method='exact'`` sweeps entry pairs within ``window`` and matches the
    pair-correlation code bit for bit at mu = 1.  ``method='binned'`` uses the
    full autocorrelation of the binned sums by FFT; its ``phase_error`` field
    carries the binning error bound instead of the ordinate-precision one.
    """
    T = ms.T if T is None else float(T)
    if x < 1:
        raise DomainError("x must be at least 1")
    p = WeightParams(1.0, 0)
    if method == "auto":
        method = "binned" if ms.binned or _pair_mass_estimate(ms, window) > pair_limit else "exact"
    norm = _normalization(T) ** (2 * ms.mu - 1)
    logx = math.log(x)
    if method == "exact":
        if ms.binned:
            raise DomainError("exact G_mu needs a materialized multiset")
        _check_window(window, T)
        pairs = pair_differences(ms.values, window, ms.counts.astype(float))
        re, im = _weighted_pair_sum(p, pairs, logx)
        from .paircorr import _pair_tail_bound, _phase_error

        if ms.mu == 1:
            tail = norm * _pair_tail_bound(p, ms.total, T, window)
        else:
            tail = norm * _local_tail_bound(ms, window)
        eps = ms.mu * ms.precision_hint
        return CorrelationEstimate(
            p, float(x), logx / math.log(T), T, norm * re, norm * abs(im), float(window), tail,
            _phase_error(p, pairs, logx, eps, norm), ms.total, int(pairs.d.size),
        )
    if method != "binned":
        raise DomainError(f"unknown method {method!r}")
    return _g_mu_binned(ms, x, T, norm, logx)


def _autocorrelation(ms, b):
    idx = np.rint(ms.values / b).astype(np.int64)
    n = int(idx.max()) + 1 if idx.size else 1
    h = np.zeros(n)
    np.add.at(h, idx, ms.counts.astype(float))
    size = 1 << int(math.ceil(math.log2(2 * n)))
    f = np.fft.rfft(h, size)
    ac = np.fft.irfft(f * np.conj(f), size)[:n]
    return np.rint(ac) if ms.total ** 2 < 2 ** 50 else ac


def _g_mu_binned(ms, x, T, norm, logx):
    b = ms.bin_width if ms.binned else 1e-3
    ac = _autocorrelation(ms, b)
    lag = np.arange(ac.size) * b
    w = 4.0 / (lag * lag + 4.0)
    f = np.cos(lag * logx) * w
    total = math.fsum([ac[0], 2 * math.fsum(ac[1:] * f[1:])])
    # each difference is off by at most delta: mu b for histograms (every ordinate rounded), b otherwise
    delta = ms.mu * b if ms.binned else b
    lo = np.maximum(lag - delta, 0.0)
    hi = lag + delta
    wmax = 4.0 / (lo * lo + 4.0)
    lip = logx * wmax + _sup_weight_slope(lo, hi)
    bound = norm * (ac[0] * lip[0] * delta + 2 * math.fsum(ac[1:] * lip[1:] * delta))
    return CorrelationEstimate(
        WeightParams(1.0, 0), float(x), logx / math.log(T), T, norm * total, 0.0, math.inf, 0.0, bound,
        ms.total, int(ac.size),
    )


_SLOPE_PEAK = 2 / math.sqrt(3)


def _weight_slope(u):
    return 8 * u / (u * u + 4.0) ** 2


def _sup_weight_slope(lo, hi):
    """sup of |w'| over [lo, hi] for w(u) = 4/(u^2+4); |w'| rises up to 2/sqrt 3 and falls after."""
    out = np.where(hi < _SLOPE_PEAK, _weight_slope(hi), _weight_slope(lo))
    return np.where((lo <= _SLOPE_PEAK) & (hi >= _SLOPE_PEAK), _weight_slope(_SLOPE_PEAK), out)


def _local_tail_bound(ms, window):
    """Bound on the weight of ordered entry pairs farther apart than ``window``.

    With M the largest count mass in any unit interval and w decreasing,
    each entry sees at most M * (w(W) + integral_W^inf w) beyond distance W on each side.
    """
    if window == math.inf:
        return 0.0
    v = ms.values
    cum = np.r_[0, np.cumsum(ms.counts)]
    hi = np.searchsorted(v, v + 1.0, side="right")
    M = float(np.max(cum[hi] - cum[:-1]))
    W = float(window)
    per = M * (4.0 / (W * W + 4.0) + (math.pi - 2 * math.atan(W / 2)))
    return 2 * ms.total * per


def theorem2_prediction(mu, alpha, T, strict=True):
    """Main terms for G_mu(alpha); ``strict`` rejects alpha outside the asserted range."""
    L = math.log(T)
    if alpha < 0:
        raise DomainError("alpha must be nonnegative")
    if mu == 1:
        raise DomainError("for mu = 1 use the pair-correlation prediction")
    if mu == 2:
        if strict and alpha > 1 - 3 * math.log(L) / L:
            raise DomainError("mu = 2 main term needs alpha <= 1 - 3 loglog T / log T")
        return max(L * T ** (-2 * alpha), 4 * alpha ** 3 / 3 * T ** (-alpha))
    if mu == 3:
        return L / (4 * T ** (2 * alpha))
    if strict and alpha > 0.5 - math.log(L) / L:
        raise DomainError("mu >= 4 main term needs alpha <= 1/2 - loglog T / log T")
    return L / (math.factorial(mu - 1) ** 2 * T ** (2 * alpha))


def theorem3_bound(mu, alpha, T):
    """Upper-bound envelope for G_mu(alpha) with unit implied constant."""
    if mu < 2 or alpha < 0:
        raise DomainError("need mu >= 2 and alpha >= 0")
    L = math.log(T)
    base = L * L / T
    if alpha <= 1:
        extra = T ** (-2 * alpha) * L
        if mu == 2:
            extra += alpha ** 3 * T ** (-alpha)
        return base + extra
    ll = math.log(L)
    if mu == 2:
        return base + T ** (2 * alpha - 3) * ll
    if mu == 3:
        return base + T ** (2 * alpha - 3.5) * ll
    return base + T ** (2 * alpha - mu / 2 - 2)


# ---------------------------------------------------------------------------
# close pairs, Stieltjes sums, log tau sums
# ---------------------------------------------------------------------------

def close_pair_count(ms, u):
    """N_mu(T, u): normalized count of ordered pairs with 0 < s - s' <= 2 pi u / log T."""
    if u <= 0:
        return 0.0
    delta = TWO_PI * u / math.log(ms.T)
    v = ms.values
    cum = np.r_[0, np.cumsum(ms.counts.astype(object) if ms.total > 2 ** 62 else ms.counts)]
    lo = np.searchsorted(v, v - delta, side="left")
    below = cum[np.arange(v.size)] - cum[lo]
    n = int(np.dot(ms.counts, below))
    return n * nt_constant(ms.T) ** (1 - 2 * ms.mu)


def caltech_main_term(a, b, c, d, T):
    L = math.log(T)
    return math.factorial(a) * math.factorial(b) * T ** (a + b + 1) * L ** (c + d + 1) / (
        TWO_PI * math.factorial(a + b + 1)
    )


def stieltjes_weighted_integral(catalog, a, b, c, d, T):
    """(sum over ordinates 14 < u <= T - 14 of u^a (T-u)^b log^c u log^d (T-u), main term)."""
    if T < 28:
        raise DomainError("need T >= 28")
    if min(a, b, c, d) < 0:
        raise DomainError("exponents must be nonnegative")
    g = catalog.upto(T - 14)
    g = g[g > 14]
    terms = g ** a * (T - g) ** b * np.log(g) ** c * np.log(T - g) ** d
    return math.fsum(terms), caltech_main_term(a, b, c, d, T)


def specialized_main_term(mu, T, t):
    L = math.log(T)
    Lnat = math.log(max(T, abs(t) + 10))
    return (T * L / TWO_PI) ** mu * Lnat / math.factorial(mu)


def log_tau_sum(ms, t):
    """(sum over entries of count * log(|t - s| + 10), main term)."""
    exact = math.fsum(ms.counts * np.log(np.abs(t - ms.values) + 10.0))
    return exact, specialized_main_term(ms.mu, ms.T, t)
