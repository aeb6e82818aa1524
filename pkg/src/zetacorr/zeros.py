"""Catalogs of critical-line zero ordinates: ingestion, location, counting, synthetic stand-ins."""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import lambertw

from . import special
from .exceptions import CoverageError, DomainError, MissedZeroError, MonotonicityError, ParseError
from .reports import make_report

__all__ = [
    "ZeroCatalog",
    "MultiplicityWarning",
    "ingest_zeros",
    "load_zeros",
    "find_zeros",
    "scan_zeros",
    "count_zeros",
    "counting_main_term",
    "check_counting",
    "synthetic_catalog",
    "TOY_ORDINATES",
]

TWO_PI = 2 * math.pi


class MultiplicityWarning(UserWarning):
    """Repeated ordinates were read; they are kept as a multiple zero."""


@dataclass(frozen=True, eq=False)
class ZeroCatalog:
    """Sorted positive ordinates, complete up to ``t_max``."""

    ordinates: np.ndarray
    t_max: float
    source: str = "unknown"
    precision_hint: float = 1e-9
    genuine: bool = True
    _digest: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        arr = np.array(self.ordinates, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "ordinates", arr)

    def __len__(self):
        return self.ordinates.size

    def __iter__(self):
        return iter(self.ordinates)

    def require(self, T):
        """Raise :class:`CoverageError` unless the catalog is complete on (0, T]."""
        if T > self.t_max * (1 + 1e-15):
            raise CoverageError(f"need ordinates up to {T:g}, catalog covers {self.t_max:g}")

    def upto(self, T):
        """Ordinates in (0, T], checking coverage."""
        self.require(T)
        return self.ordinates[: np.searchsorted(self.ordinates, T, side="right")]

    def count(self, u):
        """N(u): the number of ordinates <= u."""
        if u < 0:
            raise DomainError("u must be nonnegative")
        self.require(u)
        return int(np.searchsorted(self.ordinates, u, side="right"))

    @property
    def digest(self):
        """Short sha256 of the ordinate bytes, for provenance records."""
        if not self._digest:
            self._digest.append(hashlib.sha256(self.ordinates.tobytes()).hexdigest()[:16])
        return self._digest[0]

    def to_text(self):
        lines = [f"# source: {self.source}", f"# t_max: {self.t_max!r}"]
        lines += [repr(float(g)) for g in self.ordinates]
        return "\n".join(lines) + "\n"

    def save(self, path):
        Path(path).write_text(self.to_text())


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

def ingest_zeros(stream, t_max=None, source="stream", precision_hint=1e-9, max_lines=None):
    """Parse zero-table lines into a :class:`ZeroCatalog`.

    Blank lines and '#' comments are skipped.  ``t_max`` is clamped to the
    last ordinate read; ordinates above a smaller ``t_max`` are dropped.
    ``max_lines`` stops after that many ordinates.
    """
    if isinstance(stream, str):
        stream = stream.splitlines()
    values = []
    header_tmax = None
    prev = 0.0
    duplicates = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].strip().startswith("t_max:"):
                header_tmax = float(line.split(":", 1)[1])
            continue
        try:
            g = float(line)
        except ValueError:
            raise ParseError(f"not a decimal number: {line!r}", lineno) from None
        if not g > 0 or not math.isfinite(g):
            raise ParseError(f"ordinate must be positive, got {line!r}", lineno)
        if g < prev:
            raise MonotonicityError(f"ordinate {line} is smaller than the previous one ({prev!r})", lineno)
        if g == prev:
            duplicates += 1
        values.append(g)
        prev = g
        if max_lines is not None and len(values) >= max_lines:
            break
    if not values:
        raise ParseError("no ordinates found")
    if duplicates:
        warnings.warn(f"{duplicates} repeated ordinates treated as multiplicities", MultiplicityWarning, stacklevel=2)

    arr = np.asarray(values)
    last = float(arr[-1])
    if header_tmax is not None:
        last = max(last, header_tmax) if max_lines is None or len(values) < max_lines else last
    cap = last if t_max is None else min(float(t_max), last)
    arr = arr[: np.searchsorted(arr, cap, side="right")]
    return ZeroCatalog(arr, cap, source=source, precision_hint=precision_hint)


def load_zeros(path, t_max=None, precision_hint=1e-9, max_lines=None):
    """Read a zero table file (one ordinate per line)."""
    path = Path(path)
    with path.open() as fh:
        return ingest_zeros(fh, t_max=t_max, source=path.name, precision_hint=precision_hint, max_lines=max_lines)


# ---------------------------------------------------------------------------
# counting function
# ---------------------------------------------------------------------------

def count_zeros(catalog, u):
    return catalog.count(u)


def counting_main_term(u):
    """(u / 2 pi) log(u / (2 pi e))."""
    return u / TWO_PI * math.log(u / (TWO_PI * math.e))


def check_counting(catalog, u, tolerance=math.inf):
    if u < 10:
        raise DomainError("the counting estimate needs u >= 10")
    n = catalog.count(u)
    main = counting_main_term(u)
    return make_report(
        "N(u)",
        n,
        main,
        tolerance=tolerance,
        error_scale=math.log(u) / math.log(math.log(u)),
        u=u,
        abs_err=abs(n - main),
        catalog=catalog.digest,
    )


# ---------------------------------------------------------------------------
# zero location
# ---------------------------------------------------------------------------

_EM_BELOW = 1000.0


def _accurate_Z(t):
    """Z(t) to ~1e-11: Euler-Maclaurin zeta at low height, five-term Riemann-Siegel above."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty_like(t)
    low = t < _EM_BELOW
    if np.any(~low):
        out[~low] = special.riemann_siegel_Z(t[~low], corrections=5, warn=False)
    if np.any(low):
        theta = special.riemann_siegel_theta(t[low])
        out[low] = [
            (np.exp(1j * th) * special.zeta(0.5 + 1j * x)).real for x, th in zip(t[low], theta)
        ]
    return out


def gram_points(t_lo, t_hi):
    """Heights g with theta(g) = n pi inside [t_lo, t_hi]."""
    n0 = math.ceil(float(special.riemann_siegel_theta(t_lo)) / math.pi)
    n1 = math.floor(float(special.riemann_siegel_theta(t_hi)) / math.pi)
    if n1 < n0:
        return np.empty(0)
    n = np.arange(n0, n1 + 1, dtype=float)
    target = n * math.pi
    # invert theta(t) ~ (t/2) log(t / 2 pi e) with Newton steps
    g = np.maximum(TWO_PI * math.e * np.exp(np.real(lambertw(target / (math.pi * math.e)))), t_lo)
    for _ in range(8):
        g = g - (special.riemann_siegel_theta(g) - target) / (0.5 * np.log(g / TWO_PI))
    return g[(g >= t_lo) & (g <= t_hi)]


def _bisect(a, b, fa, iters):
    for _ in range(iters):
        m = 0.5 * (a + b)
        fm = _accurate_Z(m)
        left = np.sign(fm) == np.sign(fa)
        a = np.where(left, m, a)
        fa = np.where(left, fm, fa)
        b = np.where(left, b, m)
    return 0.5 * (a + b)


def scan_zeros(t_lo, t_hi, step=0.25, corrections=1, xtol=1e-11, use_gram=True):
    """Locate all sign changes of Z on [t_lo, t_hi] and bisect them to ``xtol``.

    The scan uses the Riemann-Siegel formula with ``corrections`` terms on a
    uniform grid plus Gram points.  Dips of |Z| that do not change sign are
    re-examined on a finer grid so closely spaced pairs are not lost.
    Refinement uses ``_accurate_Z``.
    """
    grid = np.arange(t_lo, t_hi, step)
    grid = np.append(grid, t_hi)
    if use_gram:
        grid = np.union1d(grid, gram_points(t_lo, t_hi))
    z = special.riemann_siegel_Z(grid, corrections=corrections, warn=False)

    brackets = []
    change = np.nonzero(np.sign(z[:-1]) != np.sign(z[1:]))[0]
    brackets.extend((grid[i], grid[i + 1]) for i in change)

    az = np.abs(z)
    same = np.sign(z[:-2]) == np.sign(z[2:])
    same &= np.sign(z[1:-1]) == np.sign(z[2:])
    dips = np.nonzero(same & (az[1:-1] < az[:-2]) & (az[1:-1] < az[2:]))[0] + 1
    for i in dips:
        fine = np.linspace(grid[i - 1], grid[i + 1], 41)
        zf = _accurate_Z(fine)
        sc = np.nonzero(np.sign(zf[:-1]) != np.sign(zf[1:]))[0]
        brackets.extend((fine[j], fine[j + 1]) for j in sc)
    if not brackets:
        return np.empty(0)

    br = np.array(sorted(brackets))
    a, b = br[:, 0], br[:, 1]
    fa = _accurate_Z(a)
    fb = _accurate_Z(b)
    # the coarse scan may disagree with the accurate Z right next to a zero
    ok = np.sign(fa) != np.sign(fb)
    extra = []
    for lo, hi in zip(a[~ok], b[~ok]):
        # a zero sitting on a grid point: resample the neighbourhood accurately
        fine = np.linspace(lo - step, hi + step, 31)
        zf = _accurate_Z(fine)
        sc = np.nonzero(np.sign(zf[:-1]) != np.sign(zf[1:]))[0]
        extra.extend((fine[j], fine[j + 1], zf[j]) for j in sc)
    a, b, fa = a[ok], b[ok], fa[ok]
    if extra:
        ex = np.array(extra)
        a, b, fa = np.r_[a, ex[:, 0]], np.r_[b, ex[:, 1]], np.r_[fa, ex[:, 2]]
    iters = max(1, math.ceil(math.log2(max(step, 1e-300) / xtol)))
    roots = np.sort(_bisect(a, b, fa, iters))
    keep = np.r_[True, np.diff(roots) > 10 * xtol]
    return roots[keep]


def find_zeros(t_max):
    """All critical-line ordinates up to ``t_max`` (10 <= t_max <= 5000).

    Grid of 4 points per unit plus Gram points, single-term Riemann-Siegel
    scan, bisection to 1e-11.  The count is compared with the main term of
    N(t_max); a discrepancy beyond 3 raises :class:`MissedZeroError`.
    """
    if not 10 <= t_max <= 5000:
        raise DomainError("find_zeros supports 10 <= t_max <= 5000")
    roots = scan_zeros(10.0, float(t_max), step=0.25)
    main = counting_main_term(t_max)
    if abs(roots.size - main) > 3:
        raise MissedZeroError(f"found {roots.size} zeros up to {t_max}, main term {main:.2f}")
    return ZeroCatalog(roots, float(t_max), source="riemann-siegel", precision_hint=1e-10)


# ---------------------------------------------------------------------------
# synthetic catalogs
# ---------------------------------------------------------------------------

def _toy_values(count=40):
    vals = [1.0, math.sqrt(2), math.pi, 2 + math.e]
    radicands = [q for q in range(3, 400) if all(q % (p * p) for p in range(2, 20))]
    i = 3
    for q in radicands:
        if len(vals) >= count:
            break
        if q == 2:
            continue
        vals.append(i + math.sqrt(q))
        i += 1
    return np.array(sorted(vals))


TOY_ORDINATES = _toy_values()


def _smooth_count(u):
    """theta(u)/pi + 1 without the oscillating part: the smooth zero-counting function."""
    return u / TWO_PI * np.log(u / (TWO_PI * math.e)) + 7 / 8


def _invert_smooth_count(y):
    y = np.asarray(y, dtype=float)
    u = TWO_PI * math.e * np.exp(np.real(lambertw(np.maximum(y - 7 / 8, 1e-9) / math.e)))
    u = np.maximum(u, TWO_PI * math.e)
    for _ in range(6):
        u = u - (_smooth_count(u) - y) / (np.log(u / TWO_PI) / TWO_PI)
    return u


def _gue_unit_spacing(n, rng, block=2000):
    """Unfolded GUE bulk eigenvalues with unit mean spacing (beta = 2 tridiagonal model)."""
    pieces = []
    offset = 0.0
    while sum(p.size for p in pieces) < n:
        m = block
        diag = rng.normal(0.0, math.sqrt(2.0), m)
        off = np.sqrt(rng.chisquare(2 * np.arange(m - 1, 0, -1)))
        ev = eigh_tridiagonal(diag / math.sqrt(2), off / math.sqrt(2), eigvals_only=True)
        x = ev / (2 * math.sqrt(m))  # spectrum edge sits at 2 sqrt(m); rescale to the semicircle on [-1, 1]
        cdf = m * (0.5 + (x * np.sqrt(1 - np.clip(x, -1, 1) ** 2) + np.arcsin(np.clip(x, -1, 1))) / math.pi)
        bulk = cdf[(x > -0.5) & (x < 0.5)]
        bulk = bulk - bulk[0] + offset + 1.0
        offset = bulk[-1]
        pieces.append(bulk)
    return np.concatenate(pieces)[:n]


def synthetic_catalog(kind, seed=0, t_max=100.0, scale=1.0):
    """Deterministic stand-in catalogs.

    ``independent-toy``: a fixed list of rationally independent reals
    (1, sqrt 2, pi, 2 + e, then k + sqrt q for squarefree q) times ``scale``.
    ``poisson``: Poisson points with the zero density log(t/2pi)/2pi on [10, t_max].
    ``unfolded-model``: GUE-spaced points mapped through the smooth zero
    counting function, so the local mean gap matches that of zeta zeros.
    """
    rng = np.random.default_rng(seed)
    if kind == "independent-toy":
        vals = TOY_ORDINATES * scale
        vals = vals[vals <= t_max]
        return ZeroCatalog(vals, float(t_max), source="independent-toy", precision_hint=0.0, genuine=False)
    if kind == "poisson":
        # unit-rate Poisson points in the smooth count, mapped back to heights
        y0 = _smooth_count(10.0)
        count = int(_smooth_count(t_max) - y0)
        y = y0 + np.cumsum(rng.exponential(1.0, int(1.2 * count) + 50))
        u = _invert_smooth_count(y[y <= _smooth_count(t_max)])
        return ZeroCatalog(u[u <= t_max], float(t_max), source=f"poisson:{seed}", precision_hint=0.0, genuine=False)
    if kind == "unfolded-model":
        y0 = _smooth_count(14.0)
        count = int(_smooth_count(t_max) - y0) + 1
        y = y0 + _gue_unit_spacing(count, rng) - 0.5
        u = _invert_smooth_count(y)
        u = u[u <= t_max]
        return ZeroCatalog(u, float(t_max), source=f"unfolded-model:{seed}", precision_hint=0.0, genuine=False)
    raise DomainError(f"unknown synthetic catalog kind {kind!r}")
