import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from nodescatter.sector_geometry import (
    TWO_PI,
    InvalidRegionError,
    PlanarPoint,
    PolarPoint,
    SectorAnnulus,
    area,
    canonical_angle,
    contains,
    joint_pdf,
    radial_cdf,
    radial_pdf,
)


@st.composite
def regions(draw):
    l1 = draw(st.floats(0.0, 1e3))
    l2 = l1 + draw(st.floats(1e-2, 1e3))
    a1 = draw(st.floats(0.0, 6.0))
    a2 = draw(st.floats(a1 + 1e-3, TWO_PI))
    return SectorAnnulus(l1, l2, a1, a2)


@pytest.mark.parametrize(
    "region, expected",
    [
        (SectorAnnulus(0, 1, 0, TWO_PI), math.pi),
        (SectorAnnulus(0, 1, 0, math.pi), math.pi / 2),
        (SectorAnnulus(3, 5, 0, math.pi / 2), 4 * math.pi),
    ],
)
def test_area(region, expected):
    assert area(region) == pytest.approx(expected, rel=1e-15)


def test_area_matches_hit_counting():
    # bounding-box Monte Carlo for the quarter annulus 3 <= r <= 5
    rng = np.random.default_rng(0)
    n = 2_000_000
    x, y = rng.uniform(0, 5, n), rng.uniform(0, 5, n)
    r2 = x * x + y * y
    estimate = 25.0 * np.mean((r2 >= 9) & (r2 <= 25))
    assert estimate == pytest.approx(4 * math.pi, abs=4 * 25 * math.sqrt(0.5 * 0.5 / n))


@pytest.mark.parametrize(
    "args",
    [(1, 1, 0, 1), (2, 1, 0, 1), (-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 7.0), (0, 1, -0.1, 1), (0, math.inf, 0, 1)],
)
def test_invalid_regions_rejected(args):
    with pytest.raises(InvalidRegionError):
        SectorAnnulus(*args)


def test_full_circle_upper_angle_is_kept():
    region = SectorAnnulus(0, 1, 0.5, TWO_PI)
    assert region.a2 == TWO_PI


def test_joint_pdf_examples(unit_disc):
    assert joint_pdf(unit_disc, *PolarPoint(0.5, 1.0)) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert joint_pdf(unit_disc, 1.5, 1.0) == 0.0


@pytest.mark.parametrize(
    "region",
    [SectorAnnulus(0, 1, 0, TWO_PI), SectorAnnulus(3, 5, math.pi / 4, math.pi / 2), SectorAnnulus(200, 1000, 1, 4)],
)
def test_joint_pdf_normalized(region):
    # f_{R,Theta} already contains the Jacobian, so it integrates to 1 in dr dtheta
    total, _ = sp_integrate.dblquad(
        lambda r, t: joint_pdf(region, r, t), region.a1, region.a2, region.l1, region.l2, epsabs=1e-13, epsrel=1e-13
    )
    assert total == pytest.approx(1.0, abs=1e-9)


def test_radial_cdf_examples():
    region = SectorAnnulus(3, 5, 0, 1)
    assert radial_cdf(region, 4.0) == pytest.approx(0.4375, rel=1e-15)
    assert radial_cdf(region, 3.0) == 0.0
    assert radial_cdf(region, 5.0) == 1.0
    assert radial_cdf(region, -2.0) == 0.0
    assert radial_cdf(region, 1e9) == 1.0


def test_radial_cdf_matches_empirical_cdf():
    # rejection sampling in the bounding square: independent of the inverse transform
    rng = np.random.default_rng(5)
    pts = rng.uniform(-5, 5, (3_000_000, 2))
    r = np.hypot(pts[:, 0], pts[:, 1])
    r = r[(r >= 3) & (r <= 5)]
    empirical = np.mean(r <= 4.0)
    assert empirical == pytest.approx(0.4375, abs=4 * math.sqrt(0.25 / r.size))


def test_radial_pdf_examples(unit_disc):
    assert radial_pdf(unit_disc, 1.0) == 2.0
    assert radial_pdf(unit_disc, 2.0) == 0.0
    total, _ = sp_integrate.quad(lambda r: radial_pdf(unit_disc, r), 0, 1)
    assert total == pytest.approx(1.0, abs=1e-12)


@given(regions(), st.floats(0.01, 0.99))
def test_cdf_derivative_is_pdf(region, frac):
    r = region.l1 + frac * (region.l2 - region.l1)
    h = 1e-5 * (region.l2 - region.l1)
    fd = (radial_cdf(region, r + h) - radial_cdf(region, r - h)) / (2 * h)
    # the cdf is quadratic in r, so central differences are exact up to rounding
    assert fd == pytest.approx(radial_pdf(region, r), rel=1e-6)


@given(regions())
def test_cdf_monotone(region):
    grid = np.linspace(region.l1 - 1, region.l2 + 1, 1001)
    assert np.all(np.diff(radial_cdf(region, grid)) >= 0)


@given(st.sampled_from([0.0, 1.0, 3.0]), st.sampled_from([2.0, 5.0, 7.5]), st.sampled_from([0.5, 2.0, 4.0, 8.0]),
       st.floats(0.0, 1.0))
def test_cdf_scale_covariance(l1, extra, c, frac):
    # power-of-two scale factors keep the products exact
    l2 = l1 + extra
    r = l1 + frac * extra
    base = SectorAnnulus(l1, l2, 0, 1)
    scaled = SectorAnnulus(c * l1, c * l2, 0, 1)
    assert radial_cdf(scaled, c * r) == radial_cdf(base, r)


@pytest.mark.parametrize(
    "region, point, expected",
    [
        (SectorAnnulus(0, 1, 0, math.pi), (0.5, math.pi / 2), True),
        (SectorAnnulus(0, 1, 0, math.pi), (0.5, 3 * math.pi / 2), False),
        (SectorAnnulus(1, 2, 0, math.pi), (1.0, 0.0), True),
        (SectorAnnulus(1, 2, 0, math.pi), (2.0, math.pi), True),
        (SectorAnnulus(1, 2, 0, math.pi), (2.0000001, 1.0), False),
        (SectorAnnulus(0, 1, 0, math.pi), (0.5, math.pi / 2 + TWO_PI), True),
        (SectorAnnulus(0, 1, 0, math.pi), (0.5, -math.pi / 2), False),
        (SectorAnnulus(0, 1, math.pi, TWO_PI), (0.5, 0.0), True),
        (SectorAnnulus(0, 1, math.pi, TWO_PI), (0.5, -1e-3), True),
    ],
)
def test_contains(region, point, expected):
    assert contains(region, *point) is expected


def test_contains_vectorized():
    region = SectorAnnulus(1, 2, 0, math.pi)
    out = contains(region, np.array([0.5, 1.5, 1.5]), np.array([1.0, 1.0, 4.0]))
    assert out.tolist() == [False, True, False]


def test_canonical_angle():
    assert canonical_angle(-1e-20) == 0.0
    assert canonical_angle(TWO_PI) == 0.0
    assert canonical_angle(-math.pi / 2) == pytest.approx(3 * math.pi / 2)
    assert PolarPoint(1.0, 7.0).canonical().theta == pytest.approx(7.0 - TWO_PI)


def test_point_conversions():
    p = PolarPoint(2.0, math.pi / 3).to_planar()
    assert p == pytest.approx(PlanarPoint(1.0, math.sqrt(3)))
    back = p.to_polar()
    assert back.r == pytest.approx(2.0) and back.theta == pytest.approx(math.pi / 3)
