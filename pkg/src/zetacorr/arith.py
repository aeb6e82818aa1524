"""Von Mangoldt sieve and the prime-power sums used by the pair-correlation estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, MemoryBudgetError

SIEVE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class MangoldtTable:
    """Lambda(n) for 0 <= n <= limit (index n), log p at prime powers and 0 elsewhere."""

    limit: int
    values: np.ndarray

    def __getitem__(self, n):
        return self.values[n]

    def chebyshev_psi(self, x):
        return math.fsum(self.values[: int(x) + 1])


_cache: MangoldtTable | None = None


def mangoldt_sieve(limit):
    """Exact von Mangoldt values up to ``limit`` (cached; larger tables are reused)."""
    global _cache
    limit = int(limit)
    if limit > SIEVE_BUDGET:
        raise MemoryBudgetError(f"sieve limit {limit} exceeds budget {SIEVE_BUDGET}")
    if limit < 1:
        limit = 1
    if _cache is not None and _cache.limit >= limit:
        vals = _cache.values[: limit + 1]
        vals.flags.writeable = False
        return MangoldtTable(limit, vals)

    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    primes = np.nonzero(is_prime)[0]
    values = np.zeros(limit + 1)
    values[primes] = np.log(primes)
    for p in primes[: np.searchsorted(primes, math.isqrt(limit), side="right")]:
        q = int(p) * int(p)
        lp = math.log(p)
        while q <= limit:
            values[q] = lp
            q *= int(p)
    values.flags.writeable = False
    _cache = MangoldtTable(limit, values)
    return _cache


# ---------------------------------------------------------------------------
# prime-power sums
# ---------------------------------------------------------------------------

DEFAULT_CUTOFF = 20_000_000
_CORRECTION_PRIMES = 1_000_000


@dataclass(frozen=True)
class LemmaResult:
    """An exact (or certified) sum next to its main term."""

    exact: float
    main: float
    error_bound: float = 0.0
    method: str = "direct"

    @property
    def ratio(self):
        return self.exact / self.main if self.main else math.inf


def _table(limit):
    return mangoldt_sieve(max(int(limit), 2))


def _head(x, k, a, j=0, logx_power=None, b=0):
    """sum_{2 <= n <= x} Lambda(n)^k n^a log^j n * log^b(x/n)."""
    tab = _table(x)
    n = np.arange(2, int(x) + 1, dtype=float)
    lam = tab.values[2 : int(x) + 1]
    m = lam > 0
    n, lam = n[m], lam[m]
    terms = lam ** k * n ** a
    if j:
        terms = terms * np.log(n) ** j
    if b:
        terms = terms * np.log(x / n) ** b
    return math.fsum(terms)


def _direct_tail(x, k, a, b, cutoff, extra_log=0, loglog=False):
    """sum_{x < n <= cutoff} Lambda^k n^{-a} log^b(x/n) [log n loglog n], with a bound for n > cutoff."""
    tab = _table(cutoff)
    lo = int(math.floor(x)) + 1
    n = np.arange(lo, int(cutoff) + 1, dtype=float)
    lam = tab.values[lo : int(cutoff) + 1]
    m = lam > 0
    n, lam = n[m], lam[m]
    terms = lam ** k * n ** (-a)
    if b:
        terms = terms * np.log(x / n) ** b
    if extra_log:
        terms = terms * np.log(n) * np.log(np.log(n))
    # Lambda^k <= log^k n, |log(x/n)| <= log n and log log n <= log n beyond the cutoff
    bound = _log_power_tail_bound(cutoff, a, k + b + 2 * extra_log)
    return math.fsum(terms), bound


def _log_power_tail_bound(x, g, h):
    from .special import _log_power_tail

    return _log_power_tail(x, g, h)


def _full_series(s, k, j):
    """sum_{n >= 2} Lambda(n)^k n^{-s} log^j n for k in {1, 2} via derivatives of zeta'/zeta, plus an error bound."""
    from .special import log_deriv_zeta_derivatives

    order = j + k - 1
    g = log_deriv_zeta_derivatives(complex(s), order)
    # sum Lambda(n) n^{-s} log^m n = (-1)^{m+1} g^{(m)}(s)
    base = ((-1) ** (order + 1) * g[order]).real
    err = 1e-12 * (1 + abs(base))
    if k == 1:
        return base, err
    # Lambda(n) log n - Lambda(n)^2 = (m-1) log^2 p at n = p^m
    tab = _table(_CORRECTION_PRIMES)
    p = np.nonzero(tab.values[: _CORRECTION_PRIMES + 1])[0]
    p = p[np.exp(tab.values[p]).round() == p]  # primes only
    lp = np.log(p.astype(float))
    corr = []
    for m in range(2, 200):
        t = (m - 1) * lp ** 2 * (m * lp) ** j * np.exp(-m * s * lp)
        corr.append(math.fsum(t))
        if abs(t[0]) < 1e-18:
            break
    K = sum(mm ** (1 + j) * 2.0 ** (-(mm - 2) * s) for mm in range(2, 200))
    err += K * _log_power_tail_bound(_CORRECTION_PRIMES, 2 * s, 2 + j)
    return base - math.fsum(corr), err


def mangoldt_tail(x, k, a, b=0, cutoff=None):
    """sum_{n > x} Lambda(n)^k n^{-a} log^b(x/n) with a certified error bound.

    Two routes are tried and the one with the smaller bound is kept: a direct
    sieve sum to ``cutoff`` with an integral tail bound, and (for k <= 2, small b)
    the complete Dirichlet series from zeta'/zeta derivatives minus the head.
    """
    cutoff = int(min(max(1000 * x, 10 ** 6), DEFAULT_CUTOFF) if cutoff is None else cutoff)
    direct, dbound = _direct_tail(x, k, a, b, cutoff)
    best = LemmaResult(direct, math.nan, dbound, "direct")
    if k <= 2 and b + k - 1 <= 2:
        lx = math.log(x)
        total, err = 0.0, 0.0
        parts = []
        for j in range(b + 1):
            full, e = _full_series(a, k, j)
            head = _head(x, k, -a, j=j)
            c = math.comb(b, j) * lx ** (b - j) * (-1) ** j
            parts.append(c * (full - head))
            err += abs(c) * (e + 4e-16 * (abs(full) + abs(head)))
        total = math.fsum(parts)
        if err < dbound:
            best = LemmaResult(total, math.nan, err, "complement")
    return best


def _range(cond, msg):
    if not cond:
        raise DomainError(msg)


def lemma_beef(x, a, b):
    """sum_{n <= x} Lambda(n)^2 n^a log^b(x/n) and b! x^{a+1} log x / (a+1)^{b+1}."""
    _range(a > -1, "need a > -1")
    _range(int(b) == b and b >= 0, "need integer b >= 0")
    exact = _head(x, 2, a, b=int(b)) if x >= 2 else 0.0
    main = math.factorial(b) * x ** (a + 1) * math.log(x) / (a + 1) ** (b + 1)
    return LemmaResult(exact, main)


def _tail_guard(a):
    _range(a > 1, "need a > 1")
    if a <= 1.1:
        raise DomainError("tail too fat: a must exceed 1.1 for a usable truncation")


def lemma_steak(x, a, b, cutoff=None):
    """sum_{n > x} Lambda(n)^2 n^{-a} log^b(x/n) and (-1)^b b! x^{1-a} log x / (a-1)^{b+1}."""
    _tail_guard(a)
    _range(int(b) == b and b >= 0, "need integer b >= 0")
    r = mangoldt_tail(x, 2, a, int(b), cutoff)
    main = (-1) ** b * math.factorial(b) * x ** (1 - a) * math.log(x) / (a - 1) ** (b + 1)
    return LemmaResult(r.exact, main, float(r.error_bound), r.method)


def lemma_wagyu(x, k, a):
    """sum_{n <= x} Lambda(n)^k n^a and x^{a+1} log^{k-1} x / (a+1)."""
    _range(int(k) == k and k >= 1, "need integer k >= 1")
    _range(a > -1, "need a > -1")
    exact = _head(x, k, a) if x >= 2 else 0.0
    return LemmaResult(exact, x ** (a + 1) * math.log(x) ** (k - 1) / (a + 1))


def wagyu_harmonic(x, k):
    """sum_{n <= x} Lambda(n)^k / n and log^k x / k."""
    _range(int(k) == k and k >= 1, "need integer k >= 1")
    exact = _head(x, k, -1.0) if x >= 2 else 0.0
    return LemmaResult(exact, math.log(x) ** k / k)


def lemma_sirloin(x, k, a, cutoff=None, loglog=False):
    """sum_{n > x} Lambda(n)^k n^{-a} (times log n log log n when ``loglog``) and its main term."""
    _range(int(k) == k and k >= 1, "need integer k >= 1")
    _tail_guard(a)
    L = math.log(x)
    if loglog:
        cutoff = int(min(max(1000 * x, 10 ** 6), DEFAULT_CUTOFF) if cutoff is None else cutoff)
        val, bound = _direct_tail(x, k, a, 0, cutoff, extra_log=1)
        main = x ** (1 - a) * L ** k * math.log(L) / (a - 1)
        return LemmaResult(val, main, bound, "direct")
    r = mangoldt_tail(x, k, a, 0, cutoff)
    return LemmaResult(r.exact, x ** (1 - a) * L ** (k - 1) / (a - 1), float(r.error_bound), r.method)


# ---------------------------------------------------------------------------
# Gonek sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GonekConstants:
    n: int
    T: float
    lambda_n: float
    error_scale: float


def gonek_constants(n, T):
    """lambda_n = -Lambda(n) / (2 pi sqrt n) and the two-branch error scale E(n, T)."""
    n = int(n)
    _range(n >= 2, "need n >= 2")
    lam = float(_table(n)[n])
    sq = math.sqrt(n)
    if n <= T:
        L = math.log(T)
        e = sq * L * math.log(L)
    else:
        e = sq * math.log(n) * math.log(math.log(n))
    return GonekConstants(n, float(T), -lam / (2 * math.pi * sq), e)


def _phase_sum(values, logn, weights=None):
    ph = values * logn
    c, s = np.cos(ph), np.sin(ph)
    if weights is not None:
        c, s = c * weights, s * weights
    return complex(math.fsum(c), math.fsum(s))


def gonek_sum(catalog, n, T):
    """(S(n, T) = sum_{gamma <= T} n^{i gamma}, constants with prediction lambda_n T)."""
    const = gonek_constants(n, T)
    g = catalog.upto(T)
    return _phase_sum(g, math.log(n)), const


def phi_main_term(mu, k, n, T):
    lam = gonek_constants(n, T).lambda_n
    return lam ** mu * T ** (mu + k) / ((mu + k) * math.factorial(mu - 1) * math.factorial(k))


def phi_error_scale(mu, k, n, T):
    L = math.log(T)
    return T ** (mu + k - 1) * L ** (mu - 1) * gonek_constants(n, T).error_scale


def phi_sum(ms, n, k):
    """sum over the multiset of count * n^{i s} s^k / k!."""
    _range(0 <= k <= 8, "need 0 <= k <= 8")
    w = ms.counts.astype(float)
    if k:
        w = w * ms.values ** k / math.factorial(k)
    return _phase_sum(ms.values, math.log(n), w)
