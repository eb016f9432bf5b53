import xml.etree.ElementTree as ET

import pytest

from aztec.arrowfield import ArrowField, field_from_inner_tiling, field_from_outer_tiling
from aztec.bijection import Edge, bold_edges
from aztec.geometry import AztecDiamond, Rectangle
from aztec.render import CLASS_FILLS, PLAIN_FILL, RenderOptions, render_field, render_tiling
from aztec.sampler import SampleSpec, sample_uniform
from aztec.tiling import InvalidTilingError, Tiling, domino, enumerate_tilings

SVG = "{http://www.w3.org/2000/svg}"
A1_H = Tiling(AztecDiamond(1), [domino(-1, -1, "h"), domino(-1, 0, "h")])


def parse(svg):
    return ET.fromstring(svg.encode())


def by_class(root, cls):
    return [e for e in root.iter() if e.get("class") == cls]


def test_plain_tiling_svg():
    root = parse(render_tiling(A1_H))
    assert root.tag == SVG + "svg"
    rects = by_class(root, "domino")
    assert len(rects) == 2
    assert {r.get("fill") for r in rects} == {PLAIN_FILL}
    assert {(r.get("width"), r.get("height")) for r in rects} == {("48.00", "24.00")}
    assert len(by_class(root, "outline")) == 1
    assert by_class(root, "arrow") == []


def test_tiling_with_arrows_and_nodes():
    t = next(enumerate_tilings(AztecDiamond(3)))
    root = parse(render_tiling(t, RenderOptions(show_arrows=True, show_nodes=True)))
    assert len(by_class(root, "domino")) == 12
    assert len(by_class(root, "arrow")) == 24
    nodes = {(c.get("cx"), c.get("cy")) for c in by_class(root, "node")}
    assert len(nodes) == len(by_class(root, "node"))
    assert len(nodes) == len({p for pair in field_from_outer_tiling(t).frame.corners for p in pair})


def test_rectangle_renders_without_arrows():
    t = next(enumerate_tilings(Rectangle(4, 2)))
    root = parse(render_tiling(t, RenderOptions(show_arrows=True)))
    assert len(by_class(root, "domino")) == 4
    assert by_class(root, "arrow") == []


def test_empty_diamond():
    root = parse(render_tiling(Tiling(AztecDiamond(0), ())))
    assert by_class(root, "domino") == []


def test_rendering_is_deterministic():
    t = sample_uniform(SampleSpec(6, 3))
    opts = RenderOptions(show_arrows=True, show_nodes=True, color_classes=True)
    assert render_tiling(t, opts) == render_tiling(t, opts)
    f = field_from_outer_tiling(t)
    assert render_field(f) == render_field(ArrowField(f.inner_order, f.bits))


def test_four_colour_classes_appear_on_a_random_a8():
    for seed in range(10):
        root = parse(render_tiling(sample_uniform(SampleSpec(8, seed)), RenderOptions(color_classes=True)))
        fills = {r.get("fill") for r in by_class(root, "domino")}
        if fills == set(CLASS_FILLS.values()):
            return
    pytest.fail("no sample of A_8 showed all four colour classes")


def test_coordinates_have_two_decimals():
    root = parse(render_tiling(A1_H, RenderOptions(cell_px=10, show_arrows=True)))
    for e in root.iter():
        for key in ("x", "y", "x1", "y1", "x2", "y2", "width", "height"):
            v = e.get(key)
            if v is not None:
                assert len(v.split(".")[1]) == 2


def test_arrow_directions_on_a1():
    f = field_from_outer_tiling(A1_H)
    px = 24
    root = parse(render_field(f, RenderOptions(cell_px=px, show_arrows=True)))
    arrows = by_class(root, "arrow")
    assert len(arrows) == 4
    got = set()
    for a in arrows:
        dx = float(a.get("x2")) - float(a.get("x1"))
        dy = float(a.get("y2")) - float(a.get("y1"))
        # screen y grows downward
        got.add((round(dx / (0.6 * px)), -round(dy / (0.6 * px))))
        assert a.get("marker-end") == "url(#arrowhead)"
    # the repelling node at the origin sends one arrow to each outer corner
    assert got == {(1, 1), (-1, 1), (1, -1), (-1, -1)}


def test_field_render_with_bold_edges_and_nodes():
    t = next(enumerate_tilings(AztecDiamond(3)))
    f = field_from_outer_tiling(t)
    root = parse(render_field(f, RenderOptions(show_arrows=True, show_nodes=True, show_bold_edges=True)))
    assert len(by_class(root, "bold")) == len(bold_edges(f))
    assert len(by_class(root, "inner-outline")) == 1
    assert len(by_class(root, "node")) > 0


def test_inward_bold_edges_contain_inner_boundary():
    for t in enumerate_tilings(AztecDiamond(2)):
        f = field_from_inner_tiling(t)
        edges = bold_edges(f)
        region = AztecDiamond(2)
        for c in region.cells:
            x, y = c
            if (x, y - 1) not in region:
                assert Edge.of((x, y), (x + 1, y)) in edges
            if (x, y + 1) not in region:
                assert Edge.of((x, y + 1), (x + 1, y + 1)) in edges
            if (x - 1, y) not in region:
                assert Edge.of((x, y), (x, y + 1)) in edges
            if (x + 1, y) not in region:
                assert Edge.of((x + 1, y), (x + 1, y + 1)) in edges


def test_invalid_inputs_rejected():
    with pytest.raises(InvalidTilingError):
        render_tiling(Tiling(AztecDiamond(1), [domino(-1, -1, "h")]))
    f = field_from_outer_tiling(A1_H)
    with pytest.raises(ValueError):
        render_field(ArrowField(0, f.bits ^ 1))
    with pytest.raises(ValueError):
        RenderOptions(cell_px=0)
