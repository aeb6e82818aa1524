"""Weights and kernels against displayed closed forms, finite differences and quadrature."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from zetacorr.exceptions import DomainError
from zetacorr.weights import (
    WeightParams,
    decay_constant,
    general_weight,
    kernel_product_integral,
    lorentzian_kernel,
    montgomery_weight,
    near_zero_constant,
    tail_mass,
)

DISPLAYED = {
    1: lambda u: 16 * (4 - 3 * u ** 2) / (u ** 2 + 4) ** 3,
    2: lambda u: 64 * (16 - 40 * u ** 2 + 5 * u ** 4) / (u ** 2 + 4) ** 5,
    3: lambda u: 256 * (64 - 336 * u ** 2 + 140 * u ** 4 - 7 * u ** 6) / (u ** 2 + 4) ** 7,
}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_displayed_rational_forms(k):
    u = np.linspace(-10, 10, 100)
    assert np.max(np.abs(general_weight(WeightParams(1.0, k), u) - DISPLAYED[k](u))) <= 1e-12


def test_k0_is_montgomery_weight():
    u = np.linspace(-30, 30, 301)
    assert np.max(np.abs(general_weight(WeightParams(1.0, 0), u) - montgomery_weight(u))) <= 1e-15


@pytest.mark.parametrize("nu", [0.75, 1.0, 2.0])
@pytest.mark.parametrize("k", range(9))
def test_normalized_and_even(nu, k):
    p = WeightParams(nu, k)
    assert abs(general_weight(p, 0.0) - 1.0) <= 1e-12
    u = np.linspace(0, 50, 501)
    assert np.max(np.abs(general_weight(p, u) - general_weight(p, -u))) <= 1e-12


def test_against_complex_power():
    for nu in (0.75, 1.3):
        for k in range(5):
            p = WeightParams(nu, k)
            u = np.linspace(-20, 20, 81)
            n = 2 * k + 1
            ref = (2 * nu) ** n * np.real((2 * nu - 1j * u) ** n) / (u ** 2 + 4 * nu ** 2) ** n
            assert np.max(np.abs(general_weight(p, u) - ref)) < 1e-12


def test_params_validation():
    with pytest.raises(DomainError):
        WeightParams(0.5, 0)
    with pytest.raises(DomainError):
        WeightParams(1.0, 9)
    with pytest.raises(DomainError):
        WeightParams(1.0, 1.5)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([0.75, 1.0, 2.0]), st.integers(0, 8), st.floats(-1, 1))
def test_near_zero_bound(nu, k, u):
    p = WeightParams(nu, k)
    assert abs(general_weight(p, u) - 1) <= near_zero_constant(p) * u * u + 1e-14


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([0.75, 1.0, 2.0]), st.integers(0, 8), st.floats(1, 1e4))
def test_decay_bound(nu, k, scale):
    p = WeightParams(nu, k)
    u = 4 * nu * scale
    assert abs(general_weight(p, u)) <= decay_constant(p) * u ** (-2 * k - 2) * (1 + 1e-12)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_tail_mass_bounds_integral(k):
    p = WeightParams(1.0, k)
    W = 10.0
    val = 2 * integrate.quad(lambda u: abs(general_weight(p, u)), W, np.inf, limit=200)[0]
    assert val <= tail_mass(p, W)


@pytest.mark.parametrize("deriv", [0, 1, 2, 3])
def test_kernel_derivatives_by_finite_difference(deriv):
    p = WeightParams(1.0, 0)
    h = 1e-5
    for t in (-3.0, 0.2, 1.0, 7.5):
        fd = (lorentzian_kernel(p, 1.0, t + h, deriv) - lorentzian_kernel(p, 1.0, t - h, deriv)) / (2 * h)
        assert abs(fd - lorentzian_kernel(p, 1.0, t, deriv + 1)) < 1e-6


def test_kernel_value():
    p = WeightParams(1.5, 0)
    assert abs(lorentzian_kernel(p, 2.0, 3.0) - 3.0 / (1 + 2.25)) < 1e-15


@pytest.mark.parametrize(
    "nu,k,delta,expected",
    [(1.0, 0, 0.0, 2 * math.pi), (1.0, 0, 2.0, math.pi), (1.0, 1, 2.0, -math.pi / 4)],
)
def test_kernel_integral_examples(nu, k, delta, expected):
    r = kernel_product_integral(WeightParams(nu, k), delta, details=True)
    assert abs(r.closed_form - expected) < 1e-12
    assert r.rel_discrepancy < 1e-7
