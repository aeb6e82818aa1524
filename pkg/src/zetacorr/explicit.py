"""Both sides of the nu-twisted explicit formula

    sum over all ordinates gamma (positive and negative) of x^{i gamma} W^{(k)}_{nu,gamma}(t)
        = A^{(k)} + B^{(k)} + C^{(k)} + D^{(k)}

with W_{nu,gamma}(t) = 2 nu / ((t - gamma)^2 + nu^2) and

    A = -zeta'/zeta(1/2 - nu + it) x^{-nu + it}
    B = -x^{-1/2} { sum_{n <= x} Lambda(n) (x/n)^{1/2 - nu + it} + sum_{n > x} Lambda(n) (x/n)^{1/2 + nu + it} }
    C = x^{1/2} / (1/2 + nu - it) + x^{1/2} / (-1/2 + nu + it)
    D = sum_{n >= 1} x^{-2n - 1/2} { 1/(2n + 1/2 - nu + it) - 1/(2n + 1/2 + nu + it) }.

Derivatives are taken in t.  Negative ordinates are the mirrors -gamma of the
catalog entries.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special as sps

from . import special
from .arith import mangoldt_sieve
from .exceptions import CoverageError, DomainError, PoleError
from .weights import WeightParams, lorentzian_kernel

__all__ = [
    "FormulaSides",
    "a_term",
    "a_term_direct",
    "b_term",
    "c_term",
    "d_term",
    "zero_side",
    "identity_residual",
    "K_MAX_IDENTITY",
]

K_MAX_IDENTITY = 2
NU_MARGIN = 0.25
TWO_PI = 2 * math.pi


def _check(x, nu, k):
    if x < 1:
        raise DomainError("x must be at least 1")
    if not nu > 0.5 + NU_MARGIN:
        raise DomainError(f"nu must exceed {0.5 + NU_MARGIN} for the Dirichlet series side")
    if int(k) != k or not 0 <= k <= K_MAX_IDENTITY:
        raise DomainError(f"k must be an integer in [0, {K_MAX_IDENTITY}]")


# ---------------------------------------------------------------------------
# A: functional-equation form
# ---------------------------------------------------------------------------

def _f_derivatives(t, nu, k):
    """f^{(j)}(t), j <= k, for f(t) = zeta'/zeta(1/2+nu-it) - log pi + psi((1/2-nu+it)/2)/2 + psi((1/2+nu-it)/2)/2."""
    s1 = complex(0.5 + nu, -t)
    z1 = complex(0.5 - nu, t) / 2
    z2 = complex(0.5 + nu, -t) / 2
    if t == 0 and (0.5 - nu) / 2 <= 0 and float((0.5 - nu) / 2).is_integer():
        raise PoleError("s = 1/2 - nu is a trivial zero")
    g = special.log_deriv_zeta_derivatives(s1, k)
    out = []
    for j in range(k + 1):
        v = (-1j) ** j * g[j]
        v += 0.5 * (0.5j) ** j * special.polygamma(j, z1)
        v += 0.5 * (-0.5j) ** j * special.polygamma(j, z2)
        if j == 0:
            v -= math.log(math.pi)
        out.append(v)
    return out


def a_term(x, t, nu, k=0):
    """A_nu^{(k)}(t) = d^k/dt^k [ -zeta'/zeta(1/2 - nu + it) x^{-nu+it} ] via the functional equation."""
    _check(x, nu, k)
    L = math.log(x)
    f = _f_derivatives(t, nu, k)
    acc = sum(math.comb(k, j) * f[j] * (1j * L) ** (k - j) for j in range(k + 1))
    return x ** (-nu) * cmath.exp(1j * t * L) * acc


def a_term_direct(x, t, nu):
    """A_nu(t) straight from zeta'/zeta at 1/2 - nu + it (Euler-Maclaurin); k = 0 only."""
    s = complex(0.5 - nu, t)
    return -special.log_deriv_zeta(s) * x ** (-nu) * cmath.exp(1j * t * math.log(x))


# ---------------------------------------------------------------------------
# B: prime-power sums split at x
# ---------------------------------------------------------------------------

def _head_terms(x):
    N = int(math.floor(x))
    if N < 2:
        return np.empty(0), np.empty(0)
    vals = mangoldt_sieve(N).values[2 : N + 1]
    n = np.arange(2, N + 1, dtype=float)
    m = vals > 0
    return n[m], vals[m]


def b_term(x, t, nu, k=0, tol=1e-10, details=False):
    """B_nu^{(k)}(t); the n > x part is the full Dirichlet series minus its head.

    Returns the value, or (value, error_bound) when ``details``.
    """
    _check(x, nu, k)
    L = math.log(x)
    n, lam = _head_terms(x)
    lx_n = L - np.log(n) if n.size else n
    # n <= x
    e1 = (0.5 - nu + 1j * t) * lx_n
    head = lam * np.exp(e1) * lx_n ** k
    s_head = special._fsum_complex(head) if n.size else 0j
    # n > x:  x^{s'} sum_j C(k,j) L^{k-j} (-1)^j [S_j(s') - head_j(s')], S_j = sum Lambda n^{-s'} log^j n
    sp = complex(0.5 + nu, t)
    g = special.log_deriv_zeta_derivatives(sp, k)
    logn = np.log(n) if n.size else n
    base = lam * np.exp(-sp * logn) if n.size else n
    parts = []
    err = 0.0
    for j in range(k + 1):
        full = (-1) ** (j + 1) * g[j]
        hj = special._fsum_complex(base * logn ** j) if n.size else 0j
        c = math.comb(k, j) * L ** (k - j) * (-1) ** j
        parts.append(c * (full - hj))
        err += abs(c) * (1e-13 * (1 + abs(full)) + 4e-16 * abs(hj))
    xs = cmath.exp(sp * L)
    s_tail = xs * complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
    err *= abs(xs)
    val = -(1j ** k) * x ** -0.5 * (s_head + s_tail)
    bound = x ** -0.5 * err
    if details:
        return val, bound
    return val


# ---------------------------------------------------------------------------
# C and D
# ---------------------------------------------------------------------------

def c_term(x, t, nu, k=0):
    _check(x, nu, k)
    a = complex(0.5 + nu, -t)
    b = complex(-0.5 + nu, t)
    f = math.factorial(k)
    return math.sqrt(x) * f * ((1j) ** k * a ** (-k - 1) + (-1j) ** k * b ** (-k - 1))


def _shifted_power_sum(x, c, m):
    """sum_{n >= 1} x^{-2n} (2n + c)^{-m} for x >= 1, m >= 1 (m = 1 only as part of a convergent difference)."""
    if x == 1.0:
        # sum_{n>=1} (n + c/2)^{-m} = (-1)^m psi^{(m-1)}(1 + c/2) / (m-1)!
        z = 1 + c / 2
        return 2.0 ** (-m) * (-1) ** m * special.polygamma(m - 1, z) / math.factorial(m - 1)
    r = x ** -2.0
    nmax = int(math.ceil(math.log(1e16) / (-math.log(r)))) + 2
    if nmax > 2_000_000:
        import mpmath

        z = 1 + c / 2
        v = complex(r * mpmath.lerchphi(r, m, z))
        return 2.0 ** (-m) * v
    nn = np.arange(1, nmax + 1, dtype=float)
    terms = r ** nn * (2 * nn + c) ** (-m)
    return special._fsum_complex(terms)


def d_term(x, t, nu, k=0):
    """D_nu^{(k)}(t)."""
    _check(x, nu, k)
    a = complex(0.5 - nu, t)
    b = complex(0.5 + nu, t)
    if t == 0 and float(a.real / 2).is_integer() and a.real < 0:
        raise PoleError("2n + 1/2 - nu vanishes")
    m = k + 1
    if x == 1.0 and k == 0:
        diff = 0.5 * (special.digamma(1 + b / 2) - special.digamma(1 + a / 2))
    else:
        diff = _shifted_power_sum(x, a, m) - _shifted_power_sum(x, b, m)
    return x ** -0.5 * (-1j) ** k * math.factorial(k) * diff


# ---------------------------------------------------------------------------
# zero side
# ---------------------------------------------------------------------------

def _omega(u):
    """Zero density times 2 pi: Re psi(1/4 + iu/2) - log pi."""
    return np.real(sps.psi(0.25 + 0.5j * np.asarray(u))) - math.log(math.pi)


def _s_bound(u):
    u = max(u, 30.0)
    return 0.112 * math.log(u) + 0.278 * math.log(math.log(u)) + 2.51


def _fourier_tail(h, a, omega):
    """integral_a^inf e^{i omega u} h(u) du for smooth decaying real h."""
    kw = dict(limlst=200, limit=400, epsabs=1e-14)
    if omega == 0:
        # geometric ladder of finite pieces; the integrand decays at least like log u / u^2
        edges = [a + d for d in (0.0, 10.0, 100.0, 1e3, 1e4, 1e5)]
        parts = [integrate.quad(h, lo, hi, epsabs=1e-15, epsrel=1e-12, limit=400)[0] for lo, hi in zip(edges[:-1], edges[1:])]
        # u = e^s turns the last piece into a plain exponentially decaying integrand
        parts.append(integrate.quad(lambda v: h(math.exp(v)) * math.exp(v), math.log(edges[-1]), 80.0, epsabs=1e-15, epsrel=1e-12, limit=400)[0])
        return complex(math.fsum(parts), 0.0)
    w = abs(omega)
    re = integrate.quad(h, a, np.inf, weight="cos", wvar=w, **kw)[0]
    im = integrate.quad(h, a, np.inf, weight="sin", wvar=w, **kw)[0]
    return complex(re, math.copysign(1.0, omega) * im)


def _continuation(x, t, nu, k, t_max):
    """Estimated sum over ordinates beyond t_max (both signs), with a bound on what it misses.

    Smooth density Omega(u)/2pi plus the prime-power terms whose frequency
    log(x/n) is small enough to resonate (Landau-Gonek mean of n^{i gamma}).
    """
    if t_max - abs(t) < 1:
        raise CoverageError(f"t = {t} too close to the catalog ceiling {t_max:g}")
    p = WeightParams(nu, 0)
    L = math.log(x)

    def plus(u):
        return lorentzian_kernel(p, u, t, k)

    def minus(u):
        return lorentzian_kernel(p, -u, t, k)

    total = _fourier_tail(lambda u: plus(u) * _omega(u) / TWO_PI, t_max, L)
    total += _fourier_tail(lambda u: minus(u) * _omega(u) / TWO_PI, t_max, -L)
    lo, hi = max(2, int(math.floor(x / math.exp(0.5)))), int(math.ceil(x * math.exp(0.5)))
    if hi >= 2:
        vals = mangoldt_sieve(hi).values
        for n in range(lo, hi + 1):
            if vals[n] == 0:
                continue
            w = math.log(x / n)
            coeff = -vals[n] / (TWO_PI * math.sqrt(n))
            total += coeff * (_fourier_tail(plus, t_max, w) + _fourier_tail(minus, t_max, -w))
    # what the density model misses: integration by parts against S(u), using
    # |W^{(m)}(v)| <= 2 (m+1)! nu |v + i nu|^{-m-2}  (|sin (m+1)theta| <= (m+1)|sin theta|)
    # the integral of v^{-m-2} from d to infinity is d^{-m-1} / (m + 1)
    def mag(d, m):
        return 2 * math.factorial(m + 1) * nu * d ** (-m - 2)

    def tail(d, m):
        return 2 * math.factorial(m) * nu * d ** (-m - 1)

    bound = 0.0
    for d in (t_max - t, t_max + t):
        bound += mag(d, k) + L * tail(d, k) + tail(d, k + 1)
    return total, _s_bound(t_max) * bound


def _window_tail_bound(t, nu, k, window, height):
    """Bound on |sum| over ordinates (either sign) with |gamma -+ t| > window."""
    def mag(v):
        return 2 * math.factorial(k + 1) * nu * (v * v + nu * nu) ** (-(k + 2) / 2)

    top = abs(t) + window
    dens = lambda v: mag(v) * max(math.log((abs(t) + v) / TWO_PI), 1.0) / TWO_PI
    integral = integrate.quad(dens, window, np.inf, epsrel=1e-8)[0]
    # two sides of t, two signs of gamma; the S(u) fluctuation adds twice its bound times the edge value
    return 4 * (integral + 2 * _s_bound(max(top, height)) * mag(window))


def zero_side(catalog, x, t, nu, k=0, window=None):
    """(sum over +-gamma of x^{i gamma} W^{(k)}_{nu,gamma}(t), tail bound).

    ``window=None`` sums the whole catalog and continues beyond its ceiling
    with the density model.  A finite window keeps |gamma -+ t| <= window and
    bounds the rest from kernel decay.
    """
    if x < 1:
        raise DomainError("x must be at least 1")
    p = WeightParams(nu, 0)
    L = math.log(x)
    g = catalog.ordinates
    if window is None:
        pass
    else:
        need = abs(t) + window
        if need > catalog.t_max:
            raise CoverageError(f"need ordinates up to {need:g} for t = {t}, window = {window}")
        g = g[np.abs(g - abs(t)) <= window]
    ph = g * L
    wp = lorentzian_kernel(p, g, t, k)
    wm = lorentzian_kernel(p, -g, t, k)
    if window is not None:
        wp = np.where(np.abs(g - t) <= window, wp, 0.0)
        wm = np.where(np.abs(g + t) <= window, wm, 0.0)
    cos, sin = np.cos(ph), np.sin(ph)
    re = math.fsum(np.concatenate([cos * wp, cos * wm]))
    im = math.fsum(np.concatenate([sin * wp, -sin * wm]))
    val = complex(re, im)
    if window is None:
        cont, bound = _continuation(x, t, nu, k, catalog.t_max)
        return val + cont, bound
    return val, _window_tail_bound(t, nu, k, window, catalog.t_max)


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormulaSides:
    x: float
    t: float
    nu: float
    k: int
    lhs: complex
    A: complex
    B: complex
    C: complex
    D: complex
    zero_tail_bound: float
    dirichlet_tail_bound: float
    tolerance: float = 1e-6

    @property
    def rhs(self):
        return self.A + self.B + self.C + self.D

    @property
    def residual(self):
        return abs(self.lhs - self.rhs)

    @property
    def scaled_residual(self):
        return self.residual / (1 + abs(self.rhs))

    @property
    def passed(self):
        return self.residual <= self.zero_tail_bound + self.dirichlet_tail_bound + self.tolerance * (1 + abs(self.rhs))

    def as_dict(self):
        r = self.rhs
        return {
            "x": self.x,
            "t": self.t,
            "nu": self.nu,
            "k": self.k,
            "lhs_re": self.lhs.real,
            "lhs_im": self.lhs.imag,
            "rhs_re": r.real,
            "rhs_im": r.imag,
            "residual": self.residual,
            "zero_tail_bound": self.zero_tail_bound,
            "dirichlet_tail_bound": self.dirichlet_tail_bound,
            "pass": self.passed,
        }


def identity_residual(catalog, x, t, nu, k=0, window=None, tol=1e-6):
    _check(x, nu, k)
    lhs, zbound = zero_side(catalog, x, t, nu, k, window)
    B, bbound = b_term(x, t, nu, k, details=True)
    return FormulaSides(
        float(x), float(t), float(nu), int(k), lhs,
        a_term(x, t, nu, k), B, c_term(x, t, nu, k), d_term(x, t, nu, k),
        float(zbound), float(bbound), tol,
    )
