import json
import math

import pytest

from nodescatter.layout_file import (
    LayoutFileError,
    demo_layout_path,
    layout_from_dict,
    load_layout,
    parse_layout,
)

GOOD = {
    "layers": [
        {"r_inner": 0, "r_outer": 10, "sectors": [{"theta_lo": 0, "theta_hi": math.pi, "count": 4}]},
        {"r_inner": 10, "r_outer": 20, "sectors": [{"theta_lo": 1, "theta_hi": 2, "count": 0}]},
    ]
}


def test_good_document():
    layout = parse_layout(json.dumps(GOOD))
    assert layout.node_total == 4
    assert layout.layers[1].sectors[0].region.l1 == 10


def test_demo_file_parses():
    assert load_layout(demo_layout_path()).sector_total == 7


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d["layers"][0].update(colour="red"), "layers[0].colour"),
        (lambda d: d.update(version=2), "version"),
        (lambda d: d["layers"][1]["sectors"][0].update(count=-3), "layers[1].sectors[0].count"),
        (lambda d: d["layers"][1]["sectors"][0].update(count=2.5), "layers[1].sectors[0].count"),
        (lambda d: d["layers"][0].pop("r_outer"), "layers[0].r_outer"),
        (lambda d: d["layers"][1]["sectors"][0].update(theta_hi=0.5), "layers[1].sectors[0]"),
        (lambda d: d["layers"][1]["sectors"][0].update(theta_hi=7.0), "layers[1].sectors[0]"),
        (lambda d: d.update(layers=[]), "layers"),
    ],
)
def test_rejections_carry_field_context(mutate, where):
    doc = json.loads(json.dumps(GOOD))
    mutate(doc)
    with pytest.raises(LayoutFileError) as info:
        layout_from_dict(doc)
    assert where in str(info.value)


def test_overlap_is_fatal_when_loading():
    doc = json.loads(json.dumps(GOOD))
    doc["layers"][1]["r_inner"] = 5
    with pytest.raises(LayoutFileError, match="overlap radially"):
        parse_layout(json.dumps(doc))


def test_malformed_json_reports_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "layers": [\n    {"r_inner": 0,,}\n  ]\n}\n')
    with pytest.raises(LayoutFileError, match="line 3"):
        load_layout(path)
    with pytest.raises(LayoutFileError, match="cannot read"):
        load_layout(tmp_path / "missing.json")
