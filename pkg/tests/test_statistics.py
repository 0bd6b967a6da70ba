import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sp_integrate
from scipy import special
from scipy import stats as sp_stats

from nodescatter.node_sampler import RandomStream
from nodescatter.statistics import (
    EmpiricalCdf,
    QuadratureError,
    chi2_cdf,
    chi2_quantile,
    chi_square_uniform,
    density_histogram,
    integrate,
    ks_critical_value,
    ks_statistic,
    ks_test,
    regularized_gamma_p,
)


def uniform_cdf(x):
    return np.clip(x, 0.0, 1.0)


def test_empirical_cdf_steps():
    ecdf = EmpiricalCdf([3.0, 1.0, 2.0, 2.0])
    assert ecdf(0.5) == 0.0
    assert ecdf(1.0) == 0.25
    assert ecdf(2.0) == 0.75
    assert ecdf(3.0) == 1.0
    assert ecdf(10.0) == 1.0
    grid = np.linspace(0, 4, 101)
    assert np.all(np.diff(ecdf(grid)) >= 0)
    with pytest.raises(ValueError):
        EmpiricalCdf([])


def test_ks_at_quantiles():
    n = 99
    samples = np.arange(1, n + 1) / (n + 1)
    # direct evaluation: max_i max(i/n - i/(n+1), i/(n+1) - (i-1)/n) = 1/(n+1) at the ends
    expected = max(max(i / n - i / (n + 1), i / (n + 1) - (i - 1) / n) for i in range(1, n + 1))
    assert ks_statistic(samples, uniform_cdf) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(1 / (n + 1))


def test_ks_single_sample_at_median():
    assert ks_statistic([0.5], uniform_cdf) == 0.5


def test_ks_matches_scipy():
    x = np.random.default_rng(3).uniform(size=500)
    assert ks_statistic(x, uniform_cdf) == pytest.approx(sp_stats.kstest(x, "uniform").statistic, rel=1e-12)


def test_ks_detects_shift():
    x = np.random.default_rng(4).uniform(0.02, 1.02, 100_000)
    report = ks_test(x, uniform_cdf)
    assert report.statistic > 1.63 / math.sqrt(1e5)
    assert not report.passed


def test_ks_rejects_empty():
    with pytest.raises(ValueError):
        ks_statistic([], uniform_cdf)


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=50))
def test_ks_invariant_under_increasing_transform(xs):
    # y = log(1 + x) is strictly increasing, so F_Y(y) = F_X(exp(y) - 1)
    x = np.array(xs)
    y = np.log1p(x)
    assert ks_statistic(y, lambda v: uniform_cdf(np.expm1(v))) == pytest.approx(
        ks_statistic(x, uniform_cdf), abs=1e-12
    )


def test_ks_critical_value():
    assert ks_critical_value(10_000) == pytest.approx(0.0163)
    with pytest.raises(ValueError):
        ks_critical_value(100, alpha=0.2)


@pytest.mark.parametrize("a, x", [(0.5, 0.1), (1.0, 1.0), (15.5, 10.0), (15.5, 30.0), (50, 49), (3, 100)])
def test_incomplete_gamma_against_scipy(a, x):
    assert regularized_gamma_p(a, x) == pytest.approx(special.gammainc(a, x), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("dof", [1, 2, 5, 31, 100])
@pytest.mark.parametrize("q", [0.5, 0.95, 0.99])
def test_chi2_quantile_against_scipy(dof, q):
    assert chi2_quantile(q, dof) == pytest.approx(sp_stats.chi2.ppf(q, dof), rel=1e-9)
    assert chi2_cdf(chi2_quantile(q, dof), dof) == pytest.approx(q, abs=1e-12)


def test_chi_square_equally_spaced():
    n, bins = 3200, 32
    samples = (np.arange(n) + 0.5) / n
    report = chi_square_uniform(samples, 0.0, 1.0, bins)
    assert report.statistic == pytest.approx(0.0, abs=1e-9)
    assert report.passed


def test_chi_square_single_bin():
    n, bins = 1000, 10
    report = chi_square_uniform(np.full(n, 0.05), 0.0, 1.0, bins)
    # (n - n/k)^2/(n/k) + (k-1)(n/k) = n(k-1)
    assert report.statistic == pytest.approx(n * (bins - 1))
    assert not report.passed


def test_chi_square_generator_draws_pass():
    assert chi_square_uniform(RandomStream(8).uniform(100_000), 0, 1, 32).passed


@pytest.mark.parametrize(
    "samples, lo, hi, bins",
    [([0.5] * 100, 0, 1, 1), ([1.5] * 100, 0, 1, 4), ([0.5] * 10, 0, 1, 4), ([0.5] * 100, 1, 0, 4)],
)
def test_chi_square_preconditions(samples, lo, hi, bins):
    with pytest.raises(ValueError):
        chi_square_uniform(samples, lo, hi, bins)


def test_integrate_examples():
    assert integrate(lambda r: 2 * r, 0, 1) == pytest.approx(1.0, abs=1e-12)
    s = 3.7
    gauss = integrate(lambda t: np.exp(-0.5 * (t / s) ** 2) / (s * math.sqrt(2 * math.pi)), -8 * s, 8 * s)
    assert gauss == pytest.approx(1.0 - 2 * special.ndtr(-8), abs=1e-9)


@pytest.mark.parametrize("degree", [0, 1, 5, 13, 22])
def test_integrate_polynomials(degree):
    # a single Kronrod 15 panel is exact through degree 22
    assert integrate(lambda x: x**degree, -0.5, 1.5) == pytest.approx(
        (1.5 ** (degree + 1) - (-0.5) ** (degree + 1)) / (degree + 1), rel=1e-13
    )


@pytest.mark.parametrize(
    "f, lo, hi",
    [(np.sin, 0, 10), (lambda x: np.exp(-x * x), -3, 2), (np.sqrt, 0, 2), (lambda x: np.log(1 + x), 0, 1e3)],
)
def test_integrate_against_scipy(f, lo, hi):
    reference, _ = sp_integrate.quad(f, lo, hi, epsabs=1e-13, limit=200)
    assert integrate(f, lo, hi, abs_tol=1e-11) == pytest.approx(reference, abs=1e-10)


def test_integrate_scalar_only_callable():
    assert integrate(lambda x: math.cos(x), 0, math.pi / 2) == pytest.approx(1.0, abs=1e-12)


def test_integrate_non_convergence():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sign(x - 0.3337), 0, 1, abs_tol=1e-14, max_intervals=20)
    with pytest.raises(ValueError):
        integrate(np.sin, 1, 1)


def test_density_histogram():
    one = density_histogram([1.0, 2.0, 3.0], 1)
    assert one.density[0] == pytest.approx(1 / 2.0)
    x = np.random.default_rng(9).normal(size=1234)
    h = density_histogram(x, 17)
    assert np.sum(h.density * h.widths) == pytest.approx(1.0, abs=1e-12)
    assert len(h.rows()) == 17
    with pytest.raises(ValueError):
        density_histogram([], 3)


def test_density_histogram_uniform():
    u = RandomStream(10).uniform(1_000_000) * 4.0
    h = density_histogram(u, 10)
    np.testing.assert_allclose(h.density, 1 / (u.max() - u.min()), rtol=0.01)
