"""Cellular superposition: layered, sectored scattering of nodes in a cell.

A cell is cut into concentric layers and each layer into angular sectors.
Every sector receives a fixed node count, scattered uniformly within it; the
union of all sectors gives a deliberately non-homogeneous node distribution.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .node_sampler import RandomStream, SampleBatch, sample_batch
from .sector_geometry import TWO_PI, SectorAnnulus, contains, joint_pdf

# Tolerance when comparing layer and sector radii that come from user input.
_RADIUS_RTOL = 1e-12


class LayoutError(ValueError):
    """A cell layout that cannot be scattered."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid layout: " + "; ".join(self.errors))


@dataclass(frozen=True)
class SectorSpec:
    region: SectorAnnulus
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 0:
            raise ValueError(f"sector node count must be a nonnegative integer, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))


@dataclass(frozen=True)
class LayerSpec:
    inner_radius: float
    outer_radius: float
    sectors: tuple[SectorSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sectors", tuple(self.sectors))

    @classmethod
    def from_angles(cls, inner: float, outer: float, sectors) -> LayerSpec:
        """Build a layer from ``(theta_lo, theta_hi, count)`` triples."""
        return cls(inner, outer, tuple(SectorSpec(SectorAnnulus(inner, outer, lo, hi), n) for lo, hi, n in sectors))


@dataclass(frozen=True)
class CellLayout:
    layers: tuple[LayerSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def sector_total(self) -> int:
        """Number of sectors over all layers."""
        return sum(len(layer.sectors) for layer in self.layers)

    @property
    def node_total(self) -> int:
        return sum(s.count for _, _, s in self.iter_sectors())

    def iter_sectors(self):
        """Yield ``(layer_index, sector_index, SectorSpec)`` in layout order."""
        for i, layer in enumerate(self.layers):
            for j, sector in enumerate(layer.sectors):
                yield i, j, sector


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=_RADIUS_RTOL, abs_tol=0.0)


def validate_layout(layout: CellLayout) -> ValidationReport:
    """Check a layout; overlaps and malformed radii are errors, gaps are warnings."""
    errors, warnings = [], []
    if layout.sector_total == 0:
        errors.append("layout has no sectors")
    for i, layer in enumerate(layout.layers):
        where = f"layer {i}"
        if not 0 <= layer.inner_radius < layer.outer_radius:
            errors.append(f"{where}: radii must satisfy 0 <= inner < outer, got [{layer.inner_radius}, {layer.outer_radius}]")
        if not layer.sectors:
            warnings.append(f"{where}: no sectors, layer left empty")
        for j, sector in enumerate(layer.sectors):
            reg = sector.region
            if not (_close(reg.l1, layer.inner_radius) and _close(reg.l2, layer.outer_radius)):
                errors.append(
                    f"{where} sector {j}: radii [{reg.l1}, {reg.l2}] differ from layer radii "
                    f"[{layer.inner_radius}, {layer.outer_radius}]"
                )
        spans = sorted((s.region.a1, s.region.a2, j) for j, s in enumerate(layer.sectors))
        for (lo_a, hi_a, ja), (lo_b, hi_b, jb) in zip(spans, spans[1:]):
            if lo_b < hi_a:
                errors.append(f"{where}: sectors {ja} [{lo_a}, {hi_a}] and {jb} [{lo_b}, {hi_b}] overlap in angle")
        covered = sum(hi - lo for lo, hi, _ in spans)
        if spans and covered < TWO_PI * (1 - 1e-12):
            warnings.append(f"{where}: sectors cover {covered:.6g} of 2*pi rad, the rest stays empty")

    for i, (inner, outer) in enumerate(zip(layout.layers, layout.layers[1:])):
        if outer.inner_radius < inner.outer_radius:
            errors.append(
                f"layers {i} and {i + 1} overlap radially: [{inner.inner_radius}, {inner.outer_radius}] "
                f"and [{outer.inner_radius}, {outer.outer_radius}]"
            )
        elif outer.inner_radius > inner.outer_radius:
            warnings.append(f"radial gap between layers {i} and {i + 1}: ({inner.outer_radius}, {outer.inner_radius})")
    if layout.layers and layout.layers[0].inner_radius > 0:
        warnings.append(f"radial gap around the base station: [0, {layout.layers[0].inner_radius})")
    return ValidationReport(tuple(errors), tuple(warnings))


@dataclass(frozen=True, eq=False)
class PlacementResult:
    """Per-sector batches plus their concatenation (layer-major, then sector, then node).

    ``layer`` and ``sector`` tag every superposed point with its origin;
    ``sector_index`` is the flat position of the sector in layout order.
    """

    per_sector: tuple[SampleBatch, ...]
    layer: np.ndarray
    sector: np.ndarray
    sector_index: np.ndarray
    seed: int
    r: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.r)


def run_csa(layout: CellLayout, stream: RandomStream, workers: int = 1) -> PlacementResult:
    """Scatter every sector's node count and superpose the results.

    Sector ``m`` (flat layout order) draws from ``stream.substream(m)``, so the
    output does not depend on ``workers`` or on execution order.

    Raises:
        LayoutError: if :func:`validate_layout` reports errors.
    """
    report = validate_layout(layout)
    if not report.ok:
        raise LayoutError(report.errors)
    sectors = list(layout.iter_sectors())

    def scatter(m):
        _, _, spec = sectors[m]
        return sample_batch(spec.region, spec.count, stream.substream(m))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = tuple(pool.map(scatter, range(len(sectors))))
    else:
        batches = tuple(scatter(m) for m in range(len(sectors)))

    counts = [spec.count for _, _, spec in sectors]
    return PlacementResult(
        per_sector=batches,
        layer=np.repeat([i for i, _, _ in sectors], counts).astype(int),
        sector=np.repeat([j for _, j, _ in sectors], counts).astype(int),
        sector_index=np.repeat(np.arange(len(sectors)), counts),
        seed=stream.seed,
        r=np.concatenate([b.r for b in batches]),
        theta=np.concatenate([b.theta for b in batches]),
        x=np.concatenate([b.x for b in batches]),
        y=np.concatenate([b.y for b in batches]),
    )


def superposed_density(layout: CellLayout, r, theta):
    """Density of one point drawn at random from the superposed node set.

    Mixture of the per-sector uniform densities weighted by ``count / total``.
    A point on a shared boundary is attributed to the first sector in layout
    order.
    """
    total = layout.node_total
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(np.broadcast(r, theta).shape)
    claimed = np.zeros(out.shape, dtype=bool)
    if total == 0:
        return float(out) if out.ndim == 0 else out
    for _, _, spec in layout.iter_sectors():
        hit = ~claimed & contains(spec.region, r, theta)
        out = np.where(hit, spec.count / total * joint_pdf(spec.region, r, theta), out)
        claimed |= hit
    return float(out) if out.ndim == 0 else out
