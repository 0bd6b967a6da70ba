"""Exact random node placement in circular-sector annuli.

Uniform scattering by inverse transform, the path-loss density of scattered
nodes under lognormal shadowing, and layered/sectored cell layouts.
"""

from .csa import (
    CellLayout,
    LayerSpec,
    LayoutError,
    PlacementResult,
    SectorSpec,
    run_csa,
    superposed_density,
    validate_layout,
)
from .node_sampler import RandomStream, SampleBatch, inverse_angle, inverse_radius, sample_batch, sample_node
from .pathloss import (
    PathLossParams,
    pl_histogram,
    pl_pdf_closed_form,
    pl_pdf_numeric,
    q_function,
    sample_pathloss,
)
from .sector_geometry import (
    InvalidRegionError,
    PlanarPoint,
    PolarPoint,
    SectorAnnulus,
    area,
    contains,
    joint_pdf,
    radial_cdf,
    radial_pdf,
)

__all__ = [
    "CellLayout",
    "InvalidRegionError",
    "LayerSpec",
    "LayoutError",
    "PathLossParams",
    "PlacementResult",
    "PlanarPoint",
    "PolarPoint",
    "RandomStream",
    "SampleBatch",
    "SectorAnnulus",
    "SectorSpec",
    "area",
    "contains",
    "inverse_angle",
    "inverse_radius",
    "joint_pdf",
    "pl_histogram",
    "pl_pdf_closed_form",
    "pl_pdf_numeric",
    "q_function",
    "radial_cdf",
    "radial_pdf",
    "run_csa",
    "sample_batch",
    "sample_node",
    "sample_pathloss",
    "superposed_density",
    "validate_layout",
]

__version__ = "0.1.0"
