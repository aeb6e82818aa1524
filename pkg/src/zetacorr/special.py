"""Zeta, log-derivative, polygamma and Riemann-Siegel evaluators in double precision.

Everything here is a pure function of its arguments.  ``zeta`` and its
derivatives use Euler-Maclaurin summation with a compensated head sum;
``riemann_siegel_Z`` is vectorized over numpy arrays of heights.
"""

from __future__ import annotations

import cmath
import functools
import math
import warnings
from math import comb, factorial

import numpy as np
from scipy.special import bernoulli

from .exceptions import ConvergenceError, DomainError, PoleError

__all__ = [
    "tau",
    "zeta",
    "zeta_derivatives",
    "log_deriv_zeta",
    "log_deriv_zeta_derivatives",
    "log_deriv_zeta_series",
    "mangoldt_dirichlet_partial",
    "digamma",
    "polygamma",
    "riemann_siegel_theta",
    "riemann_siegel_Z",
    "rs_error_envelope",
    "PrecisionWarning",
]

_EPS = np.finfo(float).eps
_B2 = bernoulli(80)[0::2]  # B_0, B_2, B_4, ...


class PrecisionWarning(RuntimeWarning):
    """|Z(t)| fell below the Riemann-Siegel error envelope, so its sign is unreliable."""


def tau(t):
    """|t| + 10, the height scale used in zero-density bounds."""
    return abs(t) + 10.0


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta
# ---------------------------------------------------------------------------

def _fsum_complex(values):
    return complex(math.fsum(values.real), math.fsum(values.imag))


def zeta_derivatives(s, order=0, tol=None):
    """Return ``[zeta(s), zeta'(s), ..., zeta^(order)(s)]`` by Euler-Maclaurin.

    The head length follows N = max(10, 2|t|); the tail is extended with
    Bernoulli corrections until the next one is below ``tol`` in every
    requested derivative.  If that never happens, N is doubled a few times
    before giving up.  ``tol=None`` picks the smallest absolute tolerance the
    head sum supports at this ``s`` (about 1e-13 for Re(s) >= 1/2 and small
    |t|); an explicit ``tol`` below that floor raises :class:`ConvergenceError`.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if order < 0 or order > 3:
        raise DomainError("derivative order must be in 0..3")
    if tol is not None and tol <= 0:
        raise DomainError("tol must be positive")

    N = max(10, int(math.ceil(2.0 * abs(s.imag))))
    for _ in range(6):
        n = np.arange(1, N, dtype=float)
        logn = np.log(n)
        base = np.exp(-s * logn)
        # roundoff floor of the compensated head sum: each term carries ~eps relative error
        floor = 4 * _EPS * float(np.sum(np.abs(base) * (1.0 + logn) ** order))
        floor = max(floor, 1e-15)
        if tol is None:
            goal = max(1e-13, 4 * floor)
        elif tol < floor:
            raise ConvergenceError(f"tol={tol:g} below working-precision floor {floor:.2e} at s={s}")
        else:
            goal = tol
        out = _em_zeta(s, order, goal, N, logn, base)
        if out is not None:
            return out
        N *= 2
    raise ConvergenceError(f"Euler-Maclaurin did not converge at s={s}")


def _em_zeta(s, order, tol, N, logn, base):
    L = math.log(N)
    NmS = np.exp(-s * L)          # N^{-s}
    N1mS = N * NmS                # N^{1-s}
    out = []
    for m in range(order + 1):
        head = _fsum_complex(((-logn) ** m) * base) if m else _fsum_complex(base)
        # d^m [N^{1-s} / (s-1)]
        integral = sum(
            comb(m, i) * (-L) ** (m - i) * N1mS * (-1) ** i * factorial(i) / (s - 1) ** (i + 1)
            for i in range(m + 1)
        )
        out.append(head + integral + 0.5 * (-L) ** m * NmS)

    # Bernoulli tail; P holds derivatives of s(s+1)...(s+2j-2)
    P = [s, 1.0, 0.0, 0.0]
    prev = math.inf
    for j in range(1, len(_B2)):
        c = _B2[j] / math.factorial(2 * j)
        power = NmS * N ** (1 - 2 * j)
        terms = [
            c * power * sum(comb(m, i) * P[i] * (-L) ** (m - i) for i in range(m + 1))
            for m in range(order + 1)
        ]
        size = max(abs(x) for x in terms)
        if size < tol * 1e-2:
            return out
        if j > 2 and size > prev:
            return None  # asymptotic series started to diverge; caller enlarges N
        prev = size
        for m in range(order + 1):
            out[m] += terms[m]
        for a in (s + 2 * j - 1, s + 2 * j):
            P = [P[0] * a, P[1] * a + P[0], P[2] * a + 2 * P[1], P[3] * a + 3 * P[2]]
    return None


def zeta(s, tol=None):
    """Riemann zeta function for any complex ``s != 1``."""
    return zeta_derivatives(s, 0, tol)[0]


def log_deriv_zeta(s, tol=None):
    """zeta'(s)/zeta(s) as the ratio of Euler-Maclaurin evaluations."""
    z0, z1 = zeta_derivatives(s, 1, tol)
    if z0 == 0:
        raise PoleError(f"zeta vanishes at s={s}")
    return z1 / z0


def log_deriv_zeta_derivatives(s, order=0, tol=None):
    """``[g(s), g'(s), ..., g^(order)(s)]`` for g = zeta'/zeta, order <= 2."""
    if order > 2:
        raise DomainError("only derivatives up to order 2 are supported")
    z = zeta_derivatives(s, order + 1, tol)
    g = z[1] / z[0]
    out = [g]
    if order >= 1:
        out.append(z[2] / z[0] - g * g)
    if order >= 2:
        out.append(z[3] / z[0] - 3 * z[2] * z[1] / z[0] ** 2 + 2 * g ** 3)
    return out


def mangoldt_dirichlet_partial(s, limit, weights_power=0):
    """Partial sum ``-sum_{2<=n<=limit} Lambda(n) log(n)^p n^{-s}`` and a tail bound.

    The bound majorizes ``sum_{n>limit} log(n)^{p+1} n^{-sigma}`` by the
    corresponding integral, so it is rigorous for sigma > 1.
    """
    from .arith import mangoldt_sieve

    s = complex(s)
    sigma = s.real
    if sigma <= 1:
        raise DomainError("the Dirichlet series needs Re(s) > 1")
    lam = mangoldt_sieve(int(limit)).values
    n = np.nonzero(lam)[0]
    w = lam[n] * np.log(n) ** weights_power
    terms = w * np.exp(-s * np.log(n))
    partial = -_fsum_complex(terms)
    return partial, _log_power_tail(limit, sigma, weights_power + 1)


def _log_power_tail(x, g, h):
    """Upper bound for sum_{n>x} log(n)^h n^{-g} (g > 1, x >= 3) via the integral from x-1."""
    x0 = max(float(x) - 1.0, 2.0)
    lx = math.log(x0)
    # int_{x0}^inf log^h u u^{-g} du = x0^{1-g} sum_j h!/(h-j)! lx^{h-j} / (g-1)^{j+1}
    total = sum(
        math.factorial(h) / math.factorial(h - j) * lx ** (h - j) / (g - 1) ** (j + 1) for j in range(h + 1)
    )
    return x0 ** (1 - g) * total + lx ** h * x0 ** (-g)


def log_deriv_zeta_series(s, tol=1e-10, margin=0.25, max_terms=2_000_000):
    """zeta'/zeta(s) from the Dirichlet series -sum Lambda(n) n^{-s}, Re(s) > 1 + margin.

    The series is summed directly when its analytic tail bound drops below
    ``tol`` within ``max_terms`` terms.  Closer to the line Re(s) = 1 that
    is out of reach in double precision, and the Euler-Maclaurin ratio is
    returned instead (it agrees with the series wherever both apply).
    """
    s = complex(s)
    if tol <= 0:
        raise DomainError("tol must be positive")
    if s.real <= 1 + margin:
        raise DomainError(f"Re(s) = {s.real} must exceed 1 + {margin}")
    sigma = s.real
    limit = 64
    while limit <= max_terms:
        if _log_power_tail(limit, sigma, 1) < tol:
            value, _ = mangoldt_dirichlet_partial(s, limit)
            return value
        limit *= 2
    return log_deriv_zeta(s)


# ---------------------------------------------------------------------------
# digamma / polygamma
# ---------------------------------------------------------------------------

def polygamma(order, z):
    """psi^(order)(z) for order in 0..3 by upward recurrence and the asymptotic series."""
    if order not in (0, 1, 2, 3):
        raise DomainError("polygamma order must be 0, 1, 2 or 3")
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"polygamma has a pole at {z.real:g}")
    n = order
    sign = (-1) ** (n + 1)
    nfact = math.factorial(n)
    acc = 0j
    while z.real < 16:
        acc += sign * nfact / z ** (n + 1)
        z += 1
    if n == 0:
        series = cmath.log(z) - 0.5 / z
        for k in range(1, 14):
            series -= _B2[k] / (2 * k * z ** (2 * k))
    else:
        series = math.factorial(n - 1) / z ** n + nfact / (2 * z ** (n + 1))
        for k in range(1, 14):
            series += _B2[k] * math.factorial(2 * k + n - 1) / (math.factorial(2 * k) * z ** (2 * k + n))
        series *= sign
    return series + acc


def digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z)."""
    return polygamma(0, z)


# ---------------------------------------------------------------------------
# Riemann-Siegel
# ---------------------------------------------------------------------------

def riemann_siegel_theta(t):
    """theta(t) from its asymptotic expansion; accurate to ~1e-12 for t >= 10."""
    t = np.asarray(t, dtype=float)
    return (
        0.5 * t * np.log(t / (2 * np.pi))
        - 0.5 * t
        - np.pi / 8
        + 1 / (48 * t)
        + 7 / (5760 * t ** 3)
        + 31 / (80640 * t ** 5)
        + 127 / (430080 * t ** 7)
    )


# Gabcke's bounds |R_k(t)| <= d_k (t/2pi)^{-(2k+3)/4}, valid for t >= 200
_RS_ENVELOPE = (0.127, 0.053, 0.011, 0.031, 0.017)


def rs_error_envelope(t, corrections=1):
    """Bound on the error of ``riemann_siegel_Z`` with the given number of correction terms.

    Below t = 200 the published constants are not certified, so they are
    inflated tenfold there.
    """
    t = np.asarray(t, dtype=float)
    k = corrections - 1
    d = _RS_ENVELOPE[k] * np.where(t >= 200, 1.0, 10.0)
    return d * (t / (2 * np.pi)) ** (-(2 * k + 3) / 4)


@functools.lru_cache(maxsize=None)
def _rs_correction_polys():
    """Taylor coefficients, in z = p - 1/2, of the correction functions C_0..C_4."""
    import mpmath as mp

    deg = 100
    with mp.workdps(60):
        pi = mp.pi
        # numerator -cos(2 pi z^2 - 5 pi / 8) and denominator cos(2 pi z), as power series in z
        a, b = 2 * pi, -5 * pi / 8
        num = [mp.mpf(0)] * (deg + 1)
        den = [mp.mpf(0)] * (deg + 1)
        for m in range(deg // 4 + 1):
            # cos(a z^2 + b) = cos b cos(a z^2) - sin b sin(a z^2)
            c_even = (-1) ** m * a ** (2 * m) / mp.factorial(2 * m)
            if 4 * m <= deg:
                num[4 * m] += -mp.cos(b) * c_even
            c_odd = (-1) ** m * a ** (2 * m + 1) / mp.factorial(2 * m + 1)
            if 4 * m + 2 <= deg:
                num[4 * m + 2] += mp.sin(b) * c_odd
        for m in range(deg // 2 + 1):
            den[2 * m] = (-1) ** m * (2 * pi) ** (2 * m) / mp.factorial(2 * m)
        q = [mp.mpf(0)] * (deg + 1)
        for i in range(deg + 1):
            acc = num[i] - sum(q[j] * den[i - j] for j in range(i))
            q[i] = acc / den[0]

        def deriv(coeffs, r):
            out = coeffs
            for _ in range(r):
                out = [out[i] * i for i in range(1, len(out))]
            return out

        def combo(pairs):
            length = max(len(deriv(q, r)) for r, _ in pairs)
            res = [mp.mpf(0)] * length
            for r, w in pairs:
                d = deriv(q, r)
                for i, v in enumerate(d):
                    res[i] += w * v
            return [float(v) for v in res]

        p2, p4, p6, p8 = pi ** 2, pi ** 4, pi ** 6, pi ** 8
        polys = (
            combo([(0, 1)]),
            combo([(3, -1 / (96 * p2))]),
            combo([(2, 1 / (64 * p2)), (6, 1 / (18432 * p4))]),
            combo([(1, -1 / (64 * p2)), (5, -1 / (3840 * p4)), (9, -1 / (5308416 * p6))]),
            combo([
                (0, 1 / (128 * p2)),
                (4, 19 / (24576 * p4)),
                (8, 11 / (5898240 * p6)),
                (12, 1 / (2038431744 * p8)),
            ]),
        )
    return tuple(np.array(p) for p in polys)


def riemann_siegel_Z(t, corrections=1, warn=True, chunk=1 << 21):
    """Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it) via the Riemann-Siegel formula.

    ``corrections`` counts the remainder terms C_0, C_1, ... kept (1 to 5).
    With the default single term the error is below
    ``rs_error_envelope(t, 1)``; a :class:`PrecisionWarning` is issued for
    any height where |Z| does not clear that envelope.  Accepts scalars or
    arrays of heights t >= 10.
    """
    if not 1 <= corrections <= 5:
        raise DomainError("corrections must be between 1 and 5")
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 10):
        raise DomainError("riemann_siegel_Z requires t >= 10")
    out = np.empty_like(t)
    polys = _rs_correction_polys()[:corrections]
    nmax_total = int(np.sqrt(t.max() / (2 * np.pi))) + 1
    step = max(1, chunk // nmax_total)
    for lo in range(0, t.size, step):
        out[lo:lo + step] = _rs_block(t[lo:lo + step], polys)
    if warn:
        env = rs_error_envelope(t, corrections)
        if np.any(np.abs(out) < env):
            warnings.warn("|Z(t)| below the Riemann-Siegel error envelope; sign unreliable", PrecisionWarning, stacklevel=2)
    return float(out[0]) if scalar else out


def _rs_block(t, polys):
    a = np.sqrt(t / (2 * np.pi))
    N = np.floor(a).astype(np.int64)
    p = a - N
    theta = riemann_siegel_theta(t)
    nmax = int(N.max())
    n = np.arange(1, nmax + 1, dtype=float)
    mask = n[None, :] <= N[:, None]
    phase = theta[:, None] - t[:, None] * np.log(n)[None, :]
    main = 2.0 * np.sum(np.where(mask, np.cos(phase) / np.sqrt(n)[None, :], 0.0), axis=1)
    z = p - 0.5
    inv = 1.0 / a
    rem = np.zeros_like(t)
    for k, coeffs in enumerate(polys):
        rem += np.polynomial.polynomial.polyval(z, coeffs) * inv ** k
    sign = np.where(N % 2 == 1, 1.0, -1.0)  # (-1)^(N-1)
    return main + sign * rem / np.sqrt(a)
