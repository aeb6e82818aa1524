"""Explicit-formula terms against direct evaluation and finite differences in t."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from zetacorr import explicit
from zetacorr.arith import mangoldt_sieve
from zetacorr.exceptions import CoverageError, DomainError
from zetacorr.zeros import synthetic_catalog

H = 1e-4


@pytest.mark.parametrize("x,t,nu", [(2.0, 25.0, 1.0), (10.0, 3.0, 1.5), (1.0, 60.0, 1.2)])
def test_a_term_two_routes(x, t, nu):
    a = explicit.a_term(x, t, nu)
    b = explicit.a_term_direct(x, t, nu)
    assert abs(a - b) <= 1e-9 * max(1, abs(b))


def test_a_term_mpmath():
    x, t, nu = 3.0, 14.0, 1.0
    s = mpmath.mpc(0.5 - nu, t)
    ref = complex(-mpmath.zeta(s, derivative=1) / mpmath.zeta(s) * mpmath.power(x, -nu + 1j * t))
    assert abs(explicit.a_term(x, t, nu) - ref) < 1e-10 * abs(ref)


@pytest.mark.parametrize("term", ["a_term", "b_term", "c_term", "d_term"])
@pytest.mark.parametrize("x", [1.0, 2.0, 7.5])
def test_derivatives_by_central_difference(term, x):
    f = getattr(explicit, term)
    t, nu = 13.0, 1.1
    for k in (0, 1):
        fd = (f(x, t + H, nu, k) - f(x, t - H, nu, k)) / (2 * H)
        exact = f(x, t, nu, k + 1)
        assert abs(fd - exact) <= 1e-5 * max(1, abs(exact)), (term, k)


def test_b_term_brute():
    x, t, nu = 5.5, 7.0, 3.0
    N = 400_000
    lam = mangoldt_sieve(N).values
    n = np.nonzero(lam)[0].astype(float)
    v = lam[n.astype(int)]
    head = n <= x
    e = np.where(head, 0.5 - nu + 1j * t, 0.5 + nu + 1j * t) * (math.log(x) - np.log(n))
    ref = -x ** -0.5 * np.sum(v * np.exp(e))
    # the dropped tail is below x^3 log N / N^2.5, about 2e-11
    assert abs(explicit.b_term(x, t, nu) - ref) < 1e-10


def test_d_term_direct():
    for x in (1.0, 2.0):
        t, nu = 3.0, 1.0
        a, b = complex(0.5 - nu, t), complex(0.5 + nu, t)
        ref = complex(mpmath.nsum(lambda n: mpmath.power(x, -2 * n - 0.5) * (1 / (2 * n + a) - 1 / (2 * n + b)), [1, mpmath.inf]))
        assert abs(explicit.d_term(x, t, nu) - ref) < 1e-12


def test_c_term_closed_form():
    x, t, nu = 4.0, 2.0, 1.0
    ref = 2 / complex(0.5 + nu, -t) + 2 / complex(-0.5 + nu, t)
    assert abs(explicit.c_term(x, t, nu) - ref) < 1e-15


def test_zero_side_derivative():
    cat = synthetic_catalog("unfolded-model", seed=2, t_max=400.0)
    x, t, nu = 3.0, 40.0, 1.0
    for k in (0, 1):
        fd = (explicit.zero_side(cat, x, t + H, nu, k)[0] - explicit.zero_side(cat, x, t - H, nu, k)[0]) / (2 * H)
        exact = explicit.zero_side(cat, x, t, nu, k + 1)[0]
        assert abs(fd - exact) <= 1e-5 * max(1, abs(exact))


def test_zero_side_brute_window():
    cat = synthetic_catalog("poisson", seed=1, t_max=400.0)
    x, t, nu = 2.0, 50.0, 1.0
    val, bound = explicit.zero_side(cat, x, t, nu, 0, window=100.0)
    g = cat.ordinates
    ref = 0j
    for s in (g, -g):
        m = np.abs(s - t) <= 100
        ref += np.sum(np.exp(1j * s[m] * math.log(x)) * 2 * nu / ((t - s[m]) ** 2 + nu ** 2))
    assert abs(val - ref) < 1e-12
    assert bound > 0


def test_domain_errors():
    cat = synthetic_catalog("poisson", seed=1, t_max=400.0)
    with pytest.raises(DomainError):
        explicit.a_term(2.0, 1.0, 0.7)
    with pytest.raises(DomainError):
        explicit.a_term(2.0, 1.0, 1.0, 3)
    with pytest.raises(CoverageError):
        explicit.zero_side(cat, 2.0, 350.0, 1.0, 0, window=100.0)
