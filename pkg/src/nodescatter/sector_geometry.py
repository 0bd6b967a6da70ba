"""Circular-sector annuli and their analytic densities.

A :class:`SectorAnnulus` is the region bounded by two radii ``l1 <= r <= l2``
and two angles ``a1 <= theta <= a2``.  Uniform placement in that region has a
polar density proportional to ``r``; the functions here give that density, the
marginal radial CDF/PDF and a membership test.  All functions accept scalars
or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi


class InvalidRegionError(ValueError):
    """Raised when a sector annulus would have zero or negative area."""


class PolarPoint(NamedTuple):
    r: float
    theta: float

    def canonical(self) -> PolarPoint:
        return PolarPoint(self.r, float(canonical_angle(self.theta)))

    def to_planar(self) -> PlanarPoint:
        return PlanarPoint(self.r * math.cos(self.theta), self.r * math.sin(self.theta))


class PlanarPoint(NamedTuple):
    x: float
    y: float

    def to_polar(self) -> PolarPoint:
        return PolarPoint(math.hypot(self.x, self.y), float(canonical_angle(math.atan2(self.y, self.x))))


def canonical_angle(theta):
    """Wrap angles into ``[0, 2*pi)``."""
    wrapped = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    # np.mod returns exactly 2*pi for tiny negative inputs
    wrapped = np.where(wrapped >= TWO_PI, 0.0, wrapped)
    return float(wrapped) if wrapped.ndim == 0 else wrapped


@dataclass(frozen=True)
class SectorAnnulus:
    """Sector of an annulus, ``l1 <= r <= l2`` and ``a1 <= theta <= a2``.

    Angles are kept exactly as given so that ``a2 = 2*pi`` stays representable.
    """

    l1: float
    l2: float
    a1: float
    a2: float

    def __post_init__(self):
        for name in ("l1", "l2", "a1", "a2"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidRegionError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not 0.0 <= self.l1 < self.l2:
            raise InvalidRegionError(f"radii must satisfy 0 <= l1 < l2, got l1={self.l1}, l2={self.l2}")
        if not 0.0 <= self.a1 < self.a2 <= TWO_PI:
            raise InvalidRegionError(f"angles must satisfy 0 <= a1 < a2 <= 2*pi, got a1={self.a1}, a2={self.a2}")

    @classmethod
    def disc(cls, radius: float) -> SectorAnnulus:
        return cls(0.0, radius, 0.0, TWO_PI)

    @property
    def radial_span(self) -> float:
        """``l2**2 - l1**2``."""
        return self.l2 * self.l2 - self.l1 * self.l1

    @property
    def angular_span(self) -> float:
        return self.a2 - self.a1

    @property
    def area(self) -> float:
        return 0.5 * self.radial_span * self.angular_span


def area(region: SectorAnnulus) -> float:
    return region.area


def contains(region: SectorAnnulus, r, theta):
    """Boundary-inclusive membership test.

    ``theta`` is wrapped into ``[0, 2*pi)`` first; a wrapped angle of 0 still
    matches a sector ending at ``2*pi``.
    """
    r = np.asarray(r, dtype=float)
    t = canonical_angle(np.asarray(theta, dtype=float))
    in_r = (region.l1 <= r) & (r <= region.l2)
    in_t = ((region.a1 <= t) & (t <= region.a2)) | ((region.a1 <= t + TWO_PI) & (t + TWO_PI <= region.a2))
    out = in_r & in_t
    return bool(out) if out.ndim == 0 else out


def joint_pdf(region: SectorAnnulus, r, theta):
    """Joint density of ``(R, Theta)`` for uniform placement in ``region``.

    Equal to ``2 r / ((l2^2 - l1^2)(a2 - a1))`` inside the region, zero outside.
    """
    r = np.asarray(r, dtype=float)
    value = np.where(contains(region, r, theta), 2.0 * r / (region.radial_span * region.angular_span), 0.0)
    return float(value) if value.ndim == 0 else value


def radial_cdf(region: SectorAnnulus, r):
    """``P(R <= r) = (r^2 - l1^2) / (l2^2 - l1^2)`` clamped to ``[0, 1]``."""
    r = np.asarray(r, dtype=float)
    value = np.clip((r * r - region.l1 * region.l1) / region.radial_span, 0.0, 1.0)
    value = np.where(r <= region.l1, 0.0, np.where(r >= region.l2, 1.0, value))
    return float(value) if value.ndim == 0 else value


def radial_pdf(region: SectorAnnulus, r):
    r = np.asarray(r, dtype=float)
    inside = (region.l1 <= r) & (r <= region.l2)
    value = np.where(inside, 2.0 * r / region.radial_span, 0.0)
    return float(value) if value.ndim == 0 else value
