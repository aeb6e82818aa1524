"""Windowed pair sums over zero ordinates: F(alpha, T), F_{nu,k}(x, T) and kernel convolutions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import DomainError
from .reports import make_report
from .weights import WeightParams, decay_constant, general_weight

__all__ = [
    "CorrelationEstimate",
    "KernelPair",
    "kernel_pair",
    "PairDifferences",
    "pair_differences",
    "f_general",
    "f_montgomery",
    "f_alpha_grid",
    "theorem1_prediction",
    "kernel_convolution_sum",
    "convolution_consistency",
    "predicted_convolution_limit",
    "zero_density_bound",
    "DEFAULT_WINDOW",
]

DEFAULT_WINDOW = 50.0
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class CorrelationEstimate:
    params: WeightParams
    x: float
    alpha: float
    T: float
    value: float
    imag_residual: float
    window: float
    tail_bound: float
    phase_error: float
    n_ordinates: int
    n_pairs: int = 0

    def as_dict(self):
        return {
            "nu": self.params.nu,
            "k": self.params.k,
            "x": self.x,
            "alpha": self.alpha,
            "T": self.T,
            "value": self.value,
            "imag_residual": self.imag_residual,
            "window": self.window,
            "tail_bound": self.tail_bound,
            "phase_error": self.phase_error,
            "n_ordinates": self.n_ordinates,
            "n_pairs": self.n_pairs,
        }


# ---------------------------------------------------------------------------
# Fourier kernel pairs, r_hat(alpha) = integral of r(u) exp(-2 pi i alpha u) du
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelPair:
    name: str
    lam: float
    r: object = field(repr=False, compare=False)
    r_hat: object = field(repr=False, compare=False)
    support: float = math.inf  # r_hat vanishes for |alpha| > support


def kernel_pair(name, lam):
    lam = float(lam)
    if not lam > 0:
        raise DomainError("kernel parameter must be positive")
    if name == "dirichlet-sinc":
        return KernelPair(
            name,
            lam,
            lambda u: np.sinc(2 * lam * np.asarray(u, dtype=float)),
            lambda a: np.where(np.abs(a) <= lam, 1 / (2 * lam), 0.0),
            lam,
        )
    if name == "fejer":
        return KernelPair(
            name,
            lam,
            lambda u: np.sinc(lam * np.asarray(u, dtype=float)) ** 2,
            lambda a: np.maximum(1 - np.abs(a) / lam, 0.0) / lam,
            lam,
        )
    if name == "triangle":
        return KernelPair(
            name,
            lam,
            lambda u: np.maximum(1 - np.abs(np.asarray(u, dtype=float)) / lam, 0.0),
            lambda a: lam * np.sinc(lam * np.asarray(a, dtype=float)) ** 2,
        )
    raise DomainError(f"unknown kernel {name!r}")


def predicted_convolution_limit(kernel):
    """Limit of the convolution sum divided by T log T / 2 pi, from F(alpha) ~ |alpha| + delta_0 on |alpha| < 1."""
    lam = kernel.lam
    if not 0 < lam < 1:
        raise DomainError("the limit needs 0 < lambda < 1")
    if kernel.name == "dirichlet-sinc":
        return 1 / (2 * lam) + lam / 2
    if kernel.name == "fejer":
        return 1 / lam + lam / 3
    raise DomainError(f"no closed-form limit for kernel {kernel.name!r}")


# ---------------------------------------------------------------------------
# pair enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairDifferences:
    """Positive differences s_j - s_i (i < j) within the window, with count weights."""

    n_points: int
    diagonal: float  # sum of squared counts (zero-difference ordered pairs)
    d: np.ndarray
    c: np.ndarray  # product of counts for each pair
    window: float


def pair_differences(values, window, counts=None, merge_zero=0.0):
    """Two-pointer sweep over sorted values: all i < j with 0 < s_j - s_i <= window.

    Pairs whose difference is <= ``merge_zero`` are folded into the diagonal.
    """
    s = np.asarray(values, dtype=float)
    n = s.size
    cnt = np.ones(n) if counts is None else np.asarray(counts, dtype=float)
    diag = math.fsum(cnt * cnt)
    ds, cs = [], []
    extra_diag = []
    for off in range(1, n):
        d = s[off:] - s[:-off]
        m = d <= window
        if not m.any():
            break
        prod = cnt[off:] * cnt[:-off]
        z = m & (d <= merge_zero)
        if z.any():
            extra_diag.append(2 * prod[z].sum())
            m &= ~z
        ds.append(d[m])
        cs.append(prod[m])
    if extra_diag:
        diag += math.fsum(extra_diag)
    d = np.concatenate(ds) if ds else np.empty(0)
    c = np.concatenate(cs) if cs else np.empty(0)
    return PairDifferences(n, diag, d, c, float(window))


# ---------------------------------------------------------------------------
# tail and phase bounds
# ---------------------------------------------------------------------------

def zero_density_bound(T):
    """(D, E) with #{gamma in [a, a + h]} <= D h + E for 0 < a < a + h <= T.

    D is the local density (1/2pi) log(T/2pi) and E absorbs twice the
    explicit bound |S(t)| <= 0.112 log t + 0.278 log log t + 2.51 plus the
    smooth-term remainder.
    """
    T = max(T, 30.0)
    D = math.log(T / TWO_PI) / TWO_PI
    S = 0.112 * math.log(T) + 0.278 * math.log(math.log(T)) + 2.51
    return D, 2 * S + 1.0


def _pair_tail_bound(p, n, T, window):
    """Bound on the total |weight| of ordered pairs with |gamma - gamma'| > window."""
    if window == math.inf:
        return 0.0
    e = 2 * p.k + 2
    C = decay_constant(p)
    W = max(window, 4 * p.nu)
    D, E = zero_density_bound(T)
    # sum over gamma' > gamma + W of C u^{-e} <= D int_W^inf C u^{-e} du + E C W^{-e}  (by parts)
    per_zero = D * C * W ** (1 - e) / (e - 1) + E * C * W ** (-e)
    if window < 4 * p.nu:
        # the decay bound only holds beyond 4 nu; cover the gap with |w| <= sup|w|
        per_zero += (D * (4 * p.nu - window) + E) * _sup_abs_weight(p.nu, p.k)
    return 2 * n * per_zero


@lru_cache(maxsize=None)
def _sup_abs_weight(nu, k):
    u = np.linspace(0, 8 * nu, 20001)
    return float(np.max(np.abs(general_weight(WeightParams(nu, k), u))))


@lru_cache(maxsize=None)
def _weight_lipschitz(nu, k):
    u = np.linspace(0, 40 * nu, 400001)
    w = general_weight(WeightParams(nu, k), u)
    return float(np.max(np.abs(np.diff(w)) / np.diff(u))) * 1.01


def _phase_error(p, pairs, logx, eps, norm):
    """First-order effect of perturbing every ordinate by at most eps."""
    if eps == 0:
        return 0.0
    dd = 2 * eps
    w = np.abs(general_weight(p, pairs.d))
    s = 2 * (math.fsum(pairs.c * w) * logx + _weight_lipschitz(p.nu, p.k) * math.fsum(pairs.c))
    return norm * dd * s


# ---------------------------------------------------------------------------
# F_{nu,k}(x, T)
# ---------------------------------------------------------------------------

def _normalization(T):
    return TWO_PI / (T * math.log(T))


def _check_window(window, T):
    gap = TWO_PI / max(math.log(T / TWO_PI), 1.0)
    if window < gap:
        raise DomainError(f"window {window} is below the mean gap {gap:.3f}")


def _weighted_pair_sum(p, pairs, logx):
    """Real and imaginary parts of sum over ordered pairs x^{i d} w(d), both orientations summed separately."""
    w = general_weight(p, pairs.d) * pairs.c
    ph = pairs.d * logx
    cw = np.cos(ph) * w
    sw = np.sin(ph) * w
    re = math.fsum([pairs.diagonal, math.fsum(cw), math.fsum(cw)])
    im = math.fsum(sw) - math.fsum(sw[::-1])
    return re, im


def f_general(catalog, p, x, T, window=DEFAULT_WINDOW, pairs=None):
    """F_{nu,k}(x, T) = (2pi / T log T) sum_{gamma, gamma' <= T} x^{i(gamma - gamma')} w_{nu,k}(gamma - gamma')."""
    if T < 2:
        raise DomainError("T must be at least 2")
    if x < 1:
        raise DomainError("x must be at least 1")
    window = float(window)
    _check_window(window, T)
    g = catalog.upto(T)
    if pairs is None:
        pairs = pair_differences(g, window)
    logx = math.log(x)
    norm = _normalization(T)
    re, im = _weighted_pair_sum(p, pairs, logx)
    return CorrelationEstimate(
        params=p,
        x=float(x),
        alpha=logx / math.log(T),
        T=float(T),
        value=norm * re,
        imag_residual=norm * abs(im),
        window=window,
        tail_bound=norm * _pair_tail_bound(p, g.size, T, window),
        phase_error=_phase_error(p, pairs, logx, catalog.precision_hint, norm),
        n_ordinates=int(g.size),
        n_pairs=int(pairs.d.size),
    )


def f_montgomery(catalog, alpha, T, window=DEFAULT_WINDOW, pairs=None):
    """Montgomery's F(alpha, T): the (nu, k) = (1, 0) case at x = T^alpha."""
    return f_general(catalog, WeightParams(1.0, 0), T ** alpha, T, window, pairs=pairs)


def f_alpha_grid(catalog, p, alphas, T, window=DEFAULT_WINDOW):
    """F_{nu,k}(T^alpha, T) for each alpha, sharing one pair enumeration."""
    pairs = pair_differences(catalog.upto(T), window)
    return [f_general(catalog, p, T ** a, T, window, pairs=pairs) for a in alphas]


def theorem1_prediction(p, alpha, T):
    """alpha^{2k} (2 nu log T)^{2k+1} / (2 (2k)! T^{2 nu alpha}) + alpha."""
    if not 0 <= alpha <= 1:
        raise DomainError("alpha must lie in [0, 1]")
    k, nu = p.k, p.nu
    L = math.log(T)
    spike = (alpha ** (2 * k) if k else 1.0) * (2 * nu * L) ** (2 * k + 1) / (2 * math.factorial(2 * k)) * T ** (-2 * nu * alpha)
    return spike + alpha


# ---------------------------------------------------------------------------
# kernel convolution
# ---------------------------------------------------------------------------

def kernel_convolution_sum(catalog, p, kernel, T, window=DEFAULT_WINDOW, pairs=None):
    """sum over ordered pairs gamma, gamma' <= T of r((gamma - gamma') log T / 2pi) w_{nu,k}(gamma - gamma')."""
    g = catalog.upto(T)
    if pairs is None:
        pairs = pair_differences(g, window)
    L = math.log(T)
    terms = kernel.r(pairs.d * L / TWO_PI) * general_weight(p, pairs.d) * pairs.c
    r0 = float(kernel.r(0.0))
    return math.fsum([r0 * pairs.diagonal, 2 * math.fsum(terms)])


def _alpha_grid_integral(catalog, p, kernel, T, window, pairs, n_alpha):
    """integral of F_{nu,k}(alpha) r_hat(alpha) over R on a Simpson grid, with an h vs 2h error estimate."""
    top = kernel.support if kernel.support < math.inf else 40.0 / kernel.lam
    if n_alpha % 2:
        n_alpha += 1
    a = np.linspace(0.0, top, n_alpha + 1)
    L = math.log(T)
    wts = general_weight(p, pairs.d) * pairs.c
    F = np.empty(a.size)
    for i, al in enumerate(a):
        re = math.fsum([pairs.diagonal, 2 * math.fsum(np.cos(pairs.d * (al * L)) * wts)])
        F[i] = re * _normalization(T)
    y = F * kernel.r_hat(a)
    h = a[1] - a[0]
    simpson = h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())
    h2 = 2 * h
    y2 = y[::2]
    if (y2.size - 1) % 2 == 0 and y2.size > 2:
        coarse = h2 / 3 * (y2[0] + y2[-1] + 4 * y2[1:-1:2].sum() + 2 * y2[2:-1:2].sum())
    else:
        coarse = h2 * (y2.sum() - 0.5 * (y2[0] + y2[-1]))
    # F is even in alpha, so the full-line integral doubles the half-line one
    return 2 * simpson, 2 * abs(simpson - coarse), a, F


def convolution_consistency(catalog, p, kernel, T, n_alpha=200, window=DEFAULT_WINDOW, tolerance=0.25):
    """Compare the direct kernel sum with (T log T / 2pi) * integral of measured F against r_hat, and with the predicted limit."""
    from .exceptions import ConvergenceError

    g = catalog.upto(T)
    pairs = pair_differences(g, window)
    lhs = kernel_convolution_sum(catalog, p, kernel, T, window, pairs=pairs)
    integral, err, _, _ = _alpha_grid_integral(catalog, p, kernel, T, window, pairs, n_alpha)
    scale = T * math.log(T) / TWO_PI
    rhs = scale * integral
    if scale * err > 0.1 * abs(rhs):
        raise ConvergenceError(f"alpha grid too coarse: quadrature error {scale * err:.3g} vs value {rhs:.3g}")
    try:
        limit = predicted_convolution_limit(kernel) * scale
    except DomainError:
        limit = math.nan
    return make_report(
        f"convolution[{kernel.name},lambda={kernel.lam}]",
        lhs,
        limit,
        tolerance=tolerance,
        error_scale=math.log(T) ** -0.25,
        lhs=lhs,
        rhs=rhs,
        identity_rel_err=abs(lhs - rhs) / abs(lhs) if lhs else 0.0,
        quadrature_error=scale * err,
        nu=p.nu,
        k=p.k,
        T=T,
        window=window,
        n_ordinates=int(g.size),
        catalog=catalog.digest,
    )
