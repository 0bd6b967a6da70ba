"""Goodness-of-fit and quadrature helpers used to verify the samplers.

Contents: an empirical CDF, the one-sample Kolmogorov-Smirnov statistic,
a Pearson chi-square test against the uniform law (with chi-square
quantiles computed from the regularized incomplete gamma function),
density histograms and adaptive Gauss-Kronrod quadrature.
"""

from __future__ import annotations

import heapq
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

# Asymptotic one-sample KS coefficients c(alpha); critical value is c / sqrt(n).
KS_COEFFICIENTS = {0.10: 1.22, 0.05: 1.36, 0.01: 1.63}


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class EmpiricalCdf:
    """Right-continuous step function ``F_n(x) = #{x_i <= x} / n``."""

    def __init__(self, samples):
        values = np.sort(np.asarray(samples, dtype=float).ravel())
        if values.size == 0:
            raise ValueError("empirical CDF needs at least one sample")
        self.values = values
        self.n = values.size

    def __call__(self, x):
        out = np.searchsorted(self.values, x, side="right") / self.n
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class GofReport:
    test: str
    statistic: float
    critical_value: float
    alpha: float
    n: int

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical_value


def ks_statistic(samples, cdf: Callable) -> float:
    """Two-sided KS distance ``max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)``.

    ``cdf`` must accept a sorted numpy array.
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise ValueError("KS statistic needs at least one sample")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_critical_value(n: int, alpha: float = 0.01) -> float:
    try:
        return KS_COEFFICIENTS[alpha] / math.sqrt(n)
    except KeyError:
        raise ValueError(f"no KS coefficient tabulated for alpha={alpha}") from None


def ks_test(samples, cdf: Callable, alpha: float = 0.01) -> GofReport:
    n = np.asarray(samples).size
    return GofReport("kolmogorov-smirnov", ks_statistic(samples, cdf), ks_critical_value(n, alpha), alpha, n)


# Regularized incomplete gamma, series for x < a + 1 and Lentz's continued
# fraction otherwise (Numerical Recipes, 3rd ed., section 6.2).

def _gamma_p_series(a: float, x: float) -> float:
    term = total = 1.0 / a
    ap = a
    for _ in range(10_000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-16:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_fraction(a: float, x: float) -> float:
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def regularized_gamma_p(a: float, x: float) -> float:
    """Lower regularized incomplete gamma ``P(a, x)``."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x <= 0:
        return 0.0
    if x < a + 1.0:
        return _gamma_p_series(a, x)
    return 1.0 - _gamma_q_fraction(a, x)


def chi2_cdf(x: float, dof: int) -> float:
    return regularized_gamma_p(0.5 * dof, 0.5 * x)


def chi2_quantile(q: float, dof: int) -> float:
    """Inverse of :func:`chi2_cdf` by bracketed bisection."""
    if not 0.0 < q < 1.0:
        raise ValueError("quantile level must lie in (0, 1)")
    lo, hi = 0.0, max(1.0, float(dof))
    while chi2_cdf(hi, dof) < q:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi2_cdf(mid, dof) < q:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * hi:
            break
    return 0.5 * (lo + hi)


def chi_square_uniform(samples, lo: float, hi: float, bins: int, alpha: float = 0.01) -> GofReport:
    """Pearson chi-square of equal-width bin counts against the uniform law on ``[lo, hi]``."""
    x = np.asarray(samples, dtype=float).ravel()
    n = x.size
    if bins < 2:
        raise ValueError("need at least 2 bins")
    if not lo < hi:
        raise ValueError("need lo < hi")
    if np.any((x < lo) | (x > hi)):
        raise ValueError("samples fall outside [lo, hi]")
    expected = n / bins
    if expected < 5:
        raise ValueError(f"expected count per bin is {expected:.3g}, need >= 5")
    counts, _ = np.histogram(x, bins=bins, range=(lo, hi))
    statistic = float(np.sum((counts - expected) ** 2) / expected)
    return GofReport("chi-square-uniform", statistic, chi2_quantile(1.0 - alpha, bins - 1), alpha, n)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    density: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.centers.tolist(), self.density.tolist()))


def density_histogram(samples, bins: int) -> Histogram:
    """Equal-width bins over ``[min, max]``; density is ``count / (n * width)``."""
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("histogram needs at least one sample")
    if bins < 1:
        raise ValueError("need at least one bin")
    counts, edges = np.histogram(x, bins=bins)
    return Histogram(edges, counts / (x.size * np.diff(edges)))


# Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes (0-based 1, 3, 5, 7, 9, 11, 13)
_GAUSS_W = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(f, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid + half * _NODES
    try:
        fx = np.asarray(f(x), dtype=float)
    except TypeError:
        fx = None
    if fx is None or fx.shape != x.shape:
        fx = np.array([f(float(t)) for t in x], dtype=float)
    kronrod = half * float(np.dot(_KRONROD_W, fx))
    gauss = half * float(np.dot(_GAUSS_W, fx[1::2]))
    return kronrod, abs(kronrod - gauss)


def integrate(f: Callable, lo: float, hi: float, abs_tol: float = 1e-10, max_intervals: int = 2000,
              breakpoints=()) -> float:
    """Globally adaptive Gauss-Kronrod (7/15) quadrature of ``f`` over ``[lo, hi]``.

    ``f`` is called with an array of 15 abscissae when it vectorizes, else
    point by point.  The interval with the largest error estimate is bisected
    until the summed estimate drops to ``abs_tol``.  Optional ``breakpoints``
    seed the initial partition (useful for narrow peaks).

    Raises:
        QuadratureError: if ``max_intervals`` is reached first.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    cuts = sorted({lo, hi, *(p for p in breakpoints if lo < p < hi)})
    heap = []
    total = err = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        value, e = _gk15(f, a, b)
        total += value
        err += e
        heapq.heappush(heap, (-e, a, b, value))
    while err > abs_tol:
        if len(heap) >= max_intervals:
            raise QuadratureError(
                f"no convergence on [{lo}, {hi}] after {max_intervals} intervals: error estimate {err:.3g} > {abs_tol:.3g}"
            )
        neg_e, a, b, value = heapq.heappop(heap)
        m = 0.5 * (a + b)
        left, el = _gk15(f, a, m)
        right, er = _gk15(f, m, b)
        total += left + right - value
        err += el + er + neg_e
        heapq.heappush(heap, (-el, a, m, left))
        heapq.heappush(heap, (-er, m, b, right))
    if not math.isfinite(total):
        raise QuadratureError(f"integrand is not finite on [{lo}, {hi}]")
    return total
