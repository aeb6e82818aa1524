"""The weight family w_{nu,k}, the Lorentzian kernels W_{nu,gamma}^{(k)} and their product integral."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .exceptions import DomainError, QuadratureDisagreement

__all__ = [
    "WeightParams",
    "montgomery_weight",
    "general_weight",
    "weight_coefficients",
    "near_zero_constant",
    "decay_constant",
    "tail_mass",
    "lorentzian_kernel",
    "kernel_product_integral",
    "KernelIntegral",
    "K_MAX",
]

K_MAX = 8


@dataclass(frozen=True)
class WeightParams:
    nu: float = 1.0
    k: int = 0

    def __post_init__(self):
        if not self.nu > 0.5:
            raise DomainError(f"nu must exceed 1/2, got {self.nu}")
        if int(self.k) != self.k or not 0 <= self.k <= K_MAX:
            raise DomainError(f"k must be an integer in [0, {K_MAX}], got {self.k}")
        object.__setattr__(self, "nu", float(self.nu))
        object.__setattr__(self, "k", int(self.k))


def montgomery_weight(u):
    """4 / (u^2 + 4)."""
    u = np.asarray(u, dtype=float)
    out = 4.0 / (u * u + 4.0)
    return out if out.ndim else float(out)


@lru_cache(maxsize=None)
def weight_coefficients(nu, k):
    """Coefficients c_j with Re (2nu - iu)^{2k+1} = sum_j c_j u^{2j}.

    Only even powers of u survive: the u^{2j} term of the binomial expansion
    carries i^{2j} (-1)^{2j} = (-1)^j.
    """
    n = 2 * k + 1
    a = 2.0 * nu
    return tuple((-1) ** j * math.comb(n, 2 * j) * a ** (n - 2 * j) for j in range(k + 1))


def general_weight(p, u):
    """w_{nu,k}(u) = (2nu)^{2k+1} Re{(2nu - iu)^{2k+1}} / (u^2 + 4nu^2)^{2k+1}."""
    u = np.asarray(u, dtype=float)
    n = 2 * p.k + 1
    a = 2.0 * p.nu
    u2 = u * u
    poly = np.zeros_like(u2)
    for c in reversed(weight_coefficients(p.nu, p.k)):
        poly = poly * u2 + c
    # divide factor by factor to stay in range for large u
    ratio = a / (u2 + a * a)
    out = poly * ratio ** n
    return out if out.ndim else float(out)


def near_zero_constant(p):
    """C with |w(u) - 1| <= C u^2 for |u| <= 1.

    With r = 1/(1 + u^2/a^2), w = r^n P(u^2)/a^n where P(0)/a^n = 1.  Bound
    |w - 1| <= |r^n - 1| |P|/a^n + |P/a^n - 1| using 1 - r^n <= n u^2/a^2.
    """
    n = 2 * p.k + 1
    a = 2.0 * p.nu
    c = [abs(x) / a ** n for x in weight_coefficients(p.nu, p.k)]
    poly_max = sum(c)  # |u| <= 1
    poly_dev = sum(c[1:])  # |P/a^n - 1| <= u^2 * poly_dev
    return n / a ** 2 * poly_max + poly_dev


def decay_constant(p):
    """C' with |w(u)| <= C' |u|^{-2k-2} for |u| >= 4nu.

    |w| <= a^n sum|c_j| |u|^{2j} / |u|^{2n}; for |u| >= 2a each |u|^{2j} <= |u|^{2k} * (2a)^{2j-2k},
    so |w| <= a^n sum |c_j| (2a)^{2j-2k} |u|^{2k-2n} and 2k - 2n = -2k - 2.
    """
    n = 2 * p.k + 1
    a = 2.0 * p.nu
    return a ** n * sum(abs(c) * (2 * a) ** (2 * j - 2 * p.k) for j, c in enumerate(weight_coefficients(p.nu, p.k)))


def tail_mass(p, window):
    """Upper bound for the integral of |w| over |u| > window (window >= 4 nu)."""
    if window == math.inf:
        return 0.0
    if window < 4 * p.nu:
        raise DomainError("tail bound needs window >= 4 nu")
    e = 2 * p.k + 2
    return 2 * decay_constant(p) * window ** (1 - e) / (e - 1)


def lorentzian_kernel(p, gamma, t, deriv=0):
    """d^deriv/dt^deriv of W_{nu,gamma}(t) = 2nu / ((t - gamma)^2 + nu^2).

    Uses i (-1)^m m! {(t - gamma + i nu)^{-m-1} - (t - gamma - i nu)^{-m-1}}
    = 2 (-1)^{m+1} m! Im{(t - gamma + i nu)^{-m-1}}.
    """
    if not 0 <= deriv <= K_MAX:
        raise DomainError(f"deriv must lie in [0, {K_MAX}]")
    z = np.asarray(t, dtype=float) - np.asarray(gamma, dtype=float) + 1j * p.nu
    out = 2 * (-1) ** (deriv + 1) * math.factorial(deriv) * np.imag(z ** (-deriv - 1))
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class KernelIntegral:
    closed_form: float
    quadrature: float
    tail_bound: float
    rel_discrepancy: float


def _kernel_integral_closed(p, delta):
    k = p.k
    return 4 * math.pi * math.factorial(2 * k) / (2 * p.nu) ** (2 * k + 1) * general_weight(p, delta)


def kernel_product_integral(p, delta, cutoff=1e4, rtol=1e-7, details=False):
    """Integral over R of W^{(k)}_{nu,0}(t) W^{(k)}_{nu,delta}(t) dt.

    Computed by adaptive quadrature on [-cutoff, cutoff] (plus an analytic
    tail bound) and by the closed form 4 pi (2k)! / (2nu)^{2k+1} w_{nu,k}(delta).
    Returns the closed form; raises :class:`QuadratureDisagreement` if the two
    differ by more than ``rtol`` relative to the scale of the integrand.
    """
    delta = float(delta)
    k = p.k

    def f(t):
        return lorentzian_kernel(p, 0.0, t, k) * lorentzian_kernel(p, delta, t, k)

    # break points at the two peaks and a ladder of scales around them
    pts = sorted({0.0, delta, *(s * m for s in (-1, 1) for m in (p.nu, 4 * p.nu, 16 * p.nu, 100.0, 1000.0))})
    pts = [x for x in pts if -cutoff < x < cutoff]
    edges = [-cutoff, *pts, cutoff]
    parts = [
        integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-12, limit=400)[0]
        for lo, hi in zip(edges[:-1], edges[1:])
    ]
    quad = math.fsum(parts)
    # |W^{(k)}(t)| <= 2 k! |t|^{-k-1} away from the peak (|t - gamma| >= nu); tails beyond the cutoff
    c = 2 * math.factorial(k)
    r = cutoff - abs(delta)
    tail = 2 * c * c * r ** (-2 * k - 1) / (2 * k + 1)
    quad_total = quad

    closed = _kernel_integral_closed(p, delta)
    scale = _kernel_integral_closed(p, 0.0)  # = max over delta of |closed|
    disc = abs(quad_total - closed) / scale
    if disc > rtol and abs(quad_total - closed) > tail + rtol * scale:
        raise QuadratureDisagreement(
            f"kernel integral: quadrature {quad_total!r} vs closed form {closed!r} (nu={p.nu}, k={k}, delta={delta})"
        )
    if details:
        return KernelIntegral(closed, quad_total, tail, disc)
    return closed
