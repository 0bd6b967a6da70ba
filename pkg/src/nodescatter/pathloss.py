"""Log-distance path loss with lognormal shadowing for uniformly placed nodes.

The path loss in dB of a node at distance ``r`` from the base station is

    L = alpha + beta * log10(r / r0) + psi,    psi ~ Normal(0, sigma_psi**2)

With ``r`` distributed as a uniform node in an annulus ``[l1, l2]`` the
density of ``L`` has the closed form implemented in
:func:`pl_pdf_closed_form`.  :func:`pl_pdf_numeric` evaluates the underlying
convolution integral by quadrature and serves as the independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .node_sampler import RandomStream, sample_batch
from .sector_geometry import SectorAnnulus
from .statistics import Histogram, density_histogram, integrate

LN10 = math.log(10.0)

# Demonstration values only (urban macro cell); not calibrated to any standard.
DEFAULT_R0 = 1.0
DEFAULT_ALPHA = 30.0
DEFAULT_BETA = 35.0
DEFAULT_SIGMA_PSI_DB = 8.0

# Shadowing is treated as zero beyond this many standard deviations in the
# quadrature oracle; the neglected mass is below Q(12) ~ 2e-33.
_TAU_SIGMAS = 12.0
# With l1 = 0 the support of the mean path loss is unbounded below; nodes
# closer than l2 * 10**-_INNER_DECADES carry probability 10**(-2 * _INNER_DECADES).
_INNER_DECADES = 5.0


class PathLossError(ValueError):
    """Invalid path-loss parameters or an inconsistent density evaluation."""


@dataclass(frozen=True)
class PathLossParams:
    """Parameters of the log-distance model for nodes in ``[region_l1, region_l2]``.

    ``sigma_psi`` is the shadowing standard deviation in dB.
    """

    region_l1: float
    region_l2: float
    r0: float = DEFAULT_R0
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    sigma_psi: float = DEFAULT_SIGMA_PSI_DB

    def __post_init__(self):
        for name in ("region_l1", "region_l2", "r0", "alpha", "beta", "sigma_psi"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise PathLossError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not 0.0 <= self.region_l1 < self.region_l2:
            raise PathLossError(f"need 0 <= region_l1 < region_l2, got {self.region_l1}, {self.region_l2}")
        if self.r0 <= 0:
            raise PathLossError(f"r0 must be positive, got {self.r0}")
        if self.beta <= 0:
            raise PathLossError(f"beta must be positive, got {self.beta}")
        if self.sigma_psi < 0:
            raise PathLossError(f"sigma_psi must be >= 0, got {self.sigma_psi}")

    @classmethod
    def for_region(cls, region: SectorAnnulus, **kwargs) -> PathLossParams:
        return cls(region.l1, region.l2, **kwargs)

    def mean_loss(self, r):
        """Deterministic part ``alpha + beta * log10(r / r0)``; ``-inf`` at ``r = 0``."""
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            value = self.alpha + self.beta * np.log10(r / self.r0)
        return float(value) if value.ndim == 0 else value

    @property
    def w1(self) -> float:
        return self.mean_loss(self.region_l1)

    @property
    def w2(self) -> float:
        return self.mean_loss(self.region_l2)

    @property
    def _log_prefactor(self) -> float:
        """log of ``2 r0^2 ln10 / (beta (l2^2 - l1^2))``."""
        span = self.region_l2**2 - self.region_l1**2
        return math.log(2.0 * self.r0**2 * LN10 / (self.beta * span))

    def support(self, sigmas: float = 8.0) -> tuple[float, float]:
        """Interval holding all but a negligible part of the path-loss mass.

        ``[w1 - k sigma, w2 + k sigma]``, with ``w1`` replaced by a finite
        cutoff when ``region_l1 = 0``.
        """
        lo = self.w1 if self.region_l1 > 0 else self.w2 - _INNER_DECADES * self.beta
        return lo - sigmas * self.sigma_psi, self.w2 + sigmas * self.sigma_psi


def sample_pathloss(params: PathLossParams, r, stream: RandomStream):
    """Draw path losses for nodes at distance(s) ``r``."""
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise PathLossError("distances must be positive")
    psi = stream.normal(params.sigma_psi, r.shape) if params.sigma_psi > 0 else np.zeros(r.shape)
    value = params.mean_loss(r) + psi
    return float(value) if np.ndim(value) == 0 else value


def q_function(x):
    """Gaussian tail probability ``Q(x) = erfc(x / sqrt(2)) / 2``."""
    value = 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))
    return float(value) if np.ndim(value) == 0 else value


def pl_pdf_unshadowed(params: PathLossParams, l):
    """Density of ``alpha + beta log10(R / r0)`` alone (the ``sigma_psi = 0`` limit).

    ``2 r0^2 ln10 / (beta (l2^2 - l1^2)) * 10**(2 (l - alpha) / beta)`` on ``[w1, w2]``.
    """
    l = np.asarray(l, dtype=float)
    inside = (l >= params.w1) & (l <= params.w2)
    log_f = params._log_prefactor + 2.0 * LN10 * (l - params.alpha) / params.beta
    value = np.where(inside, np.exp(np.where(inside, log_f, 0.0)), 0.0)
    return float(value) if value.ndim == 0 else value


def pl_pdf_closed_form(params: PathLossParams, l):
    """Closed-form density of the shadowed path loss.

    For ``sigma_psi > 0``::

        f(l) = K * 10**(2 (ln10 sigma^2 + beta (l - alpha)) / beta^2)
                 * [Q((Omega - beta log10 r) / sigma)] evaluated r = l1 .. l2
        Omega = l - alpha + beta log10(r0) + 2 ln10 sigma^2 / beta

    with ``K = 2 r0^2 ln10 / (beta (l2^2 - l1^2))`` and the bracket taken as
    (term at l2) - (term at l1).  The l1 term vanishes when ``l1 = 0``.
    Evaluated in log space so large ``|l|`` neither overflows nor cancels.

    ``sigma_psi = 0`` falls back to :func:`pl_pdf_unshadowed`.
    """
    if params.sigma_psi == 0:
        return pl_pdf_unshadowed(params, l)
    l = np.asarray(l, dtype=float)
    s = params.sigma_psi
    beta = params.beta
    log_scale = params._log_prefactor + LN10 * 2.0 * (LN10 * s * s + beta * (l - params.alpha)) / beta**2
    omega = l - params.alpha + beta * math.log10(params.r0) + 2.0 * LN10 * s * s / beta
    # log Q(x) = log_ndtr(-x)
    log_q2 = special.log_ndtr(-(omega - beta * math.log10(params.region_l2)) / s)
    if params.region_l1 > 0:
        log_q1 = special.log_ndtr(-(omega - beta * math.log10(params.region_l1)) / s)
    else:
        log_q1 = np.full_like(l, -np.inf)
    with np.errstate(invalid="ignore"):
        bracket_ratio = np.where(np.isneginf(log_q2), 0.0, -np.expm1(log_q1 - log_q2))
    if np.any(bracket_ratio < -1e-12):
        raise PathLossError("Q-function bracket evaluated negative")
    value = np.exp(log_scale + log_q2) * np.maximum(bracket_ratio, 0.0)
    return float(value) if value.ndim == 0 else value


def _transformed_radial_density(params: PathLossParams, x):
    """Density of the unshadowed loss at ``x``: ``ln10 r f_R(r) / beta`` at ``r = r0 10**((x - alpha)/beta)``."""
    r = params.r0 * 10.0 ** ((x - params.alpha) / params.beta)
    span = params.region_l2**2 - params.region_l1**2
    inside = (r >= params.region_l1) & (r <= params.region_l2)
    return np.where(inside, LN10 * r * (2.0 * r / span) / params.beta, 0.0)


def pl_pdf_numeric(params: PathLossParams, l, abs_tol: float = 1e-10):
    """Path-loss density by direct quadrature of the shadowing convolution.

    Integrates ``N(tau; 0, sigma^2) * g(l - tau)`` over ``tau`` in
    ``[l - w2, l - w1]``, where ``g`` is the unshadowed density.  Shadowing
    beyond 12 sigma is dropped, which also makes the ``l1 = 0`` case finite.

    Raises:
        QuadratureError: if the adaptive quadrature does not converge.
    """
    s = params.sigma_psi
    if s <= 0:
        raise PathLossError("numeric convolution needs sigma_psi > 0")
    w1, w2 = params.w1, params.w2
    norm = 1.0 / (s * math.sqrt(2.0 * math.pi))

    def one(level: float) -> float:
        lo = max(level - w2, -_TAU_SIGMAS * s)
        hi = min(level - w1, _TAU_SIGMAS * s)
        if not lo < hi:
            return 0.0

        def integrand(tau):
            return norm * np.exp(-0.5 * (tau / s) ** 2) * _transformed_radial_density(params, level - tau)

        return integrate(integrand, lo, hi, abs_tol=abs_tol, breakpoints=(0.0,))

    values = np.array([one(v) for v in np.atleast_1d(np.asarray(l, dtype=float)).ravel()])
    return float(values[0]) if np.ndim(l) == 0 else values.reshape(np.shape(l))


def pl_histogram(params: PathLossParams, region: SectorAnnulus, n: int, bins: int,
                 stream: RandomStream) -> Histogram:
    """Monte Carlo path-loss density: scatter ``n`` nodes, shadow each, bin.

    Radii come first from ``stream`` (two uniforms per node), then the
    shadowing draws.
    """
    if (region.l1, region.l2) != (params.region_l1, params.region_l2):
        raise PathLossError(
            f"region radii ({region.l1}, {region.l2}) differ from params ({params.region_l1}, {params.region_l2})"
        )
    if n < 1:
        raise PathLossError(f"n must be >= 1, got {n}")
    if bins < 1:
        raise PathLossError(f"bins must be >= 1, got {bins}")
    nodes = sample_batch(region, n, stream)
    # a node exactly at the base station has no finite path loss
    r = np.maximum(nodes.r, np.finfo(float).tiny)
    return density_histogram(sample_pathloss(params, r, stream), bins)


def mean_pathloss(params: PathLossParams) -> float:
    """``E[L] = alpha + beta E[log10(R / r0)]``; shadowing has zero mean.

    ``E[ln R] = [r^2 ln r - r^2 / 2]_{l1}^{l2} / (l2^2 - l1^2)``.
    """
    def antiderivative(r: float) -> float:
        return 0.0 if r == 0 else r * r * math.log(r) - 0.5 * r * r

    l1, l2 = params.region_l1, params.region_l2
    e_ln_r = (antiderivative(l2) - antiderivative(l1)) / (l2 * l2 - l1 * l1)
    return params.alpha + params.beta * (e_ln_r / LN10 - math.log10(params.r0))
