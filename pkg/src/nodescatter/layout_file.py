"""JSON layout files for :mod:`nodescatter.csa`.

Schema (angles in radians, radii in meters, unknown keys rejected)::

    {
      "layers": [
        {"r_inner": 0, "r_outer": 200,
         "sectors": [{"theta_lo": 0, "theta_hi": 6.283185307179586, "count": 300}]},
        ...
      ]
    }
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .csa import CellLayout, LayerSpec, SectorSpec, validate_layout
from .sector_geometry import InvalidRegionError, SectorAnnulus


class LayoutFileError(ValueError):
    """Layout document that cannot be parsed or does not validate."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class SectorModel(_Strict):
    theta_lo: float
    theta_hi: float
    count: int = Field(ge=0, strict=True)


class LayerModel(_Strict):
    r_inner: float = Field(ge=0)
    r_outer: float = Field(gt=0)
    sectors: list[SectorModel]


class LayoutModel(_Strict):
    layers: list[LayerModel] = Field(min_length=1)


def _format_validation(err: ValidationError) -> str:
    lines = []
    for item in err.errors():
        loc = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in item["loc"]).lstrip(".")
        lines.append(f"{loc or '<root>'}: {item['msg']}")
    return "; ".join(lines)


def layout_from_dict(doc) -> CellLayout:
    try:
        model = LayoutModel.model_validate(doc)
    except ValidationError as err:
        raise LayoutFileError(_format_validation(err)) from None
    layers = []
    for i, layer in enumerate(model.layers):
        sectors = []
        for j, sec in enumerate(layer.sectors):
            try:
                region = SectorAnnulus(layer.r_inner, layer.r_outer, sec.theta_lo, sec.theta_hi)
            except InvalidRegionError as err:
                raise LayoutFileError(f"layers[{i}].sectors[{j}]: {err}") from None
            sectors.append(SectorSpec(region, sec.count))
        layers.append(LayerSpec(layer.r_inner, layer.r_outer, tuple(sectors)))
    return CellLayout(tuple(layers))


def layout_to_dict(layout: CellLayout) -> dict:
    return {
        "layers": [
            {
                "r_inner": layer.inner_radius,
                "r_outer": layer.outer_radius,
                "sectors": [
                    {"theta_lo": s.region.a1, "theta_hi": s.region.a2, "count": s.count} for s in layer.sectors
                ],
            }
            for layer in layout.layers
        ]
    }


def parse_layout(text: str) -> CellLayout:
    """Parse and validate a layout document; overlap errors are fatal here."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise LayoutFileError(f"malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}") from None
    layout = layout_from_dict(doc)
    report = validate_layout(layout)
    if not report.ok:
        raise LayoutFileError("; ".join(report.errors))
    return layout


def load_layout(path) -> CellLayout:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise LayoutFileError(f"cannot read {path}: {err.strerror}") from None
    try:
        return parse_layout(text)
    except LayoutFileError as err:
        raise LayoutFileError(f"{path}: {err}") from None


def demo_layout_path() -> Path:
    return Path(str(resources.files("nodescatter") / "data" / "demo_layout.json"))


def load_demo_layout() -> CellLayout:
    """Three layers, seven sectors (1 + 2 + 4), uneven counts."""
    return load_layout(demo_layout_path())
