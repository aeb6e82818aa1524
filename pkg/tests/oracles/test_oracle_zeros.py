"""Zero-table ingestion, the zero finder and synthetic catalogs."""

import io
import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetacorr import zeros
from zetacorr.exceptions import CoverageError, DomainError, MonotonicityError, ParseError


def test_ingest_basic():
    cat = zeros.ingest_zeros("# header\n14.134725142\n\n21.022039639\n25.010857580\n")
    assert cat.ordinates.tolist() == [14.134725142, 21.022039639, 25.010857580]
    assert cat.t_max == 25.010857580
    assert cat.count(22.0) == 2


def test_ingest_errors_carry_line_numbers():
    with pytest.raises(ParseError) as e:
        zeros.ingest_zeros("14.1\n21.0\nabc\n")
    assert e.value.lineno == 3
    with pytest.raises(MonotonicityError) as e:
        zeros.ingest_zeros("14.1\n21.0\n20.0\n")
    assert e.value.lineno == 3
    with pytest.raises(ParseError):
        zeros.ingest_zeros("-1\n")
    with pytest.raises(ParseError):
        zeros.ingest_zeros("# only a comment\n")


def test_duplicates_warn():
    with pytest.warns(zeros.MultiplicityWarning):
        cat = zeros.ingest_zeros("14.1\n14.1\n21.0\n")
    assert cat.ordinates.size == 3


def test_t_max_clamp_and_coverage():
    cat = zeros.ingest_zeros("14.1\n21.0\n25.0\n", t_max=22.0)
    assert cat.ordinates.tolist() == [14.1, 21.0]
    assert cat.t_max == 22.0
    cat = zeros.ingest_zeros("14.1\n21.0\n", t_max=100.0)
    assert cat.t_max == 21.0
    with pytest.raises(CoverageError):
        cat.upto(30.0)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0.01, 1e5, allow_nan=False), min_size=1, max_size=50, unique=True))
def test_text_roundtrip(vals):
    cat = zeros.ZeroCatalog(np.sort(vals), max(vals), "h")
    back = zeros.ingest_zeros(io.StringIO(cat.to_text()))
    assert np.array_equal(back.ordinates, cat.ordinates)
    assert back.t_max == cat.t_max
    assert back.digest == cat.digest


def test_find_zeros_matches_mpmath():
    roots = zeros.find_zeros(100.0).ordinates
    assert roots.size == 29
    for i in (0, 1, 10, 28):
        assert abs(roots[i] - float(mpmath.zetazero(i + 1).imag)) < 1e-9


def test_find_zeros_below_first():
    assert len(zeros.find_zeros(14.0)) == 0
    with pytest.raises(DomainError):
        zeros.find_zeros(5.0)


def test_scan_finds_close_pair():
    # zeros 6709 and 6710 near t = 7005.06 are a famously close pair
    r = zeros.scan_zeros(7004.9, 7005.3, step=0.25)
    ref = [float(mpmath.zetazero(n).imag) for n in (6709, 6710)]
    assert np.allclose(r, ref, atol=1e-9)


def test_counting_report():
    cat = zeros.find_zeros(200.0)
    rep = zeros.check_counting(cat, 200.0)
    assert rep.measured == 79
    assert abs(rep.measured - rep.predicted) < 3


def test_synthetic_deterministic():
    a = zeros.synthetic_catalog("unfolded-model", seed=7, t_max=500.0)
    b = zeros.synthetic_catalog("unfolded-model", seed=7, t_max=500.0)
    assert a.digest == b.digest
    c = zeros.synthetic_catalog("poisson", seed=7, t_max=500.0)
    assert c.digest != a.digest
    assert not a.genuine


@pytest.mark.parametrize("kind", ["poisson", "unfolded-model"])
def test_synthetic_density(kind):
    cat = zeros.synthetic_catalog(kind, seed=0, t_max=3000.0)
    expected = zeros.counting_main_term(3000.0)
    assert abs(cat.ordinates.size - expected) < 4 * math.sqrt(expected)


def test_unfolded_model_is_rigid():
    cat = zeros.synthetic_catalog("unfolded-model", seed=0, t_max=3000.0)
    y = zeros._smooth_count(cat.ordinates)
    s = np.diff(y)
    # GUE spacings: mean 1, variance about 0.18 (Poisson would give 1)
    assert abs(s.mean() - 1) < 0.05
    assert 0.1 < s.var() < 0.3


def test_toy_values():
    toy = zeros.synthetic_catalog("independent-toy", t_max=4.72)
    assert toy.ordinates.tolist() == pytest.approx([1, math.sqrt(2), math.pi, 2 + math.e])
