"""Deterministic SVG pictures of tilings and arrow fields.

Lattice point ``(x, y)`` is drawn at pixel ``((x - x_min + 0.5) * px, (y_max - y + 0.5) * px)``,
so the y axis points up as in the usual mathematical drawings.  Coordinates are
written with two decimals and the output depends only on the input and the
options.

With ``color_classes`` dominoes get one of four fills, by orientation and by
which long side carries the domino's node corners (for a tiling of ``A_m`` the
node parity is that of ``m - 1``; for rectangles it is even)::

    horizontal, nodes below   #d95f02
    horizontal, nodes above   #1b9e77
    vertical,   nodes left    #7570b3
    vertical,   nodes right   #e7298a
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .arrowfield import ArrowField, field_from_outer_tiling, validate_field
from .bijection import bold_edges
from .geometry import AztecDiamond, Point, Region, aztec
from .tiling import H, Domino, Tiling, check_tiling

PLAIN_FILL = "#f2efe6"
CLASS_FILLS = {
    ("h", 0): "#d95f02",
    ("h", 1): "#1b9e77",
    ("v", 0): "#7570b3",
    ("v", 1): "#e7298a",
}
INK = "#222222"
ARROW_INK = "#1f4e9c"
BOLD_INK = "#c0392b"


@dataclass(frozen=True)
class RenderOptions:
    cell_px: int = 24
    show_arrows: bool = False
    show_nodes: bool = False
    show_bold_edges: bool = False
    color_classes: bool = False

    def __post_init__(self) -> None:
        if self.cell_px <= 0:
            raise ValueError("cell_px must be positive")


def _num(v: float) -> str:
    return f"{v:.2f}"


class _Canvas:
    def __init__(self, region: Region, px: int):
        x0, y0, x1, y1 = region.bounds()
        self.x0, self.y1, self.px = x0, y1, px
        self.width = (x1 - x0 + 1) * px
        self.height = (y1 - y0 + 1) * px
        self.parts: list[str] = []

    def at(self, x: float, y: float) -> tuple[str, str]:
        return _num((x - self.x0 + 0.5) * self.px), _num((self.y1 - y + 0.5) * self.px)

    def add(self, s: str) -> None:
        self.parts.append(s)

    def document(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_num(self.width)}" height="{_num(self.height)}" '
            f'viewBox="0 0 {_num(self.width)} {_num(self.height)}">\n'
            "<defs>\n"
            '<marker id="arrowhead" viewBox="0 0 10 10" refX="9" refY="5" '
            'markerWidth="5" markerHeight="5" orient="auto">'
            f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{ARROW_INK}"/></marker>\n'
            "</defs>\n"
        )
        return head + "\n".join(self.parts) + "\n</svg>\n"


def _outline(canvas: _Canvas, region: Region, cls: str, extra: str = "") -> None:
    """Path along every cell side not shared with another cell of the region."""
    segs = []
    for c in region.cells:
        x, y = c
        if not region.contains((x, y - 1)):
            segs.append(((x, y), (x + 1, y)))
        if not region.contains((x, y + 1)):
            segs.append(((x, y + 1), (x + 1, y + 1)))
        if not region.contains((x - 1, y)):
            segs.append(((x, y), (x, y + 1)))
        if not region.contains((x + 1, y)):
            segs.append(((x + 1, y), (x + 1, y + 1)))
    if not segs:
        return
    d = " ".join(
        "M {} {} L {} {}".format(*canvas.at(*a), *canvas.at(*b)) for a, b in sorted(segs)
    )
    canvas.add(
        f'<path class="{cls}" d="{d}" fill="none" stroke="{INK}" stroke-width="2"{extra}/>'
    )


def _dots(canvas: _Canvas, points: Iterable[Point]) -> None:
    r = _num(max(canvas.px / 10, 1.5))
    for p in sorted(set(points)):
        cx, cy = canvas.at(*p)
        canvas.add(f'<circle class="node" cx="{cx}" cy="{cy}" r="{r}" fill="{INK}"/>')


def _arrows(canvas: _Canvas, f: ArrowField) -> None:
    for cell, head in f.heads().items():
        tail = f.tail(cell)
        # draw the middle 60% of the diagonal
        ax, ay = tail.x + 0.2 * (head.x - tail.x), tail.y + 0.2 * (head.y - tail.y)
        bx, by = tail.x + 0.8 * (head.x - tail.x), tail.y + 0.8 * (head.y - tail.y)
        x1, y1 = canvas.at(ax, ay)
        x2, y2 = canvas.at(bx, by)
        canvas.add(
            f'<line class="arrow" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{ARROW_INK}" stroke-width="1.5" marker-end="url(#arrowhead)"/>'
        )


def _node_parity(region: Region) -> int:
    if isinstance(region, AztecDiamond):
        return (region.order - 1) % 2
    return 0


def domino_class(d: Domino, parity: int) -> tuple[str, int]:
    """(orientation, side) where side 0 means nodes below / left of the domino."""
    x, y = d.cell
    return d.orientation.value, (x + y - parity) % 2


def region_nodes(region: Region) -> set[Point]:
    parity = _node_parity(region)
    return {p for c in region.cells for p in c.corners() if (p.x + p.y - parity) % 2 == 0}


def render_tiling(t: Tiling, opts: RenderOptions = RenderOptions()) -> str:
    check_tiling(t)
    canvas = _Canvas(t.region, opts.cell_px)
    parity = _node_parity(t.region)
    px = opts.cell_px
    for d in t.sorted_dominoes():
        w, h = (2, 1) if d.orientation is H else (1, 2)
        x, y = canvas.at(d.cell.x, d.cell.y + h)
        fill = CLASS_FILLS[domino_class(d, parity)] if opts.color_classes else PLAIN_FILL
        canvas.add(
            f'<rect class="domino" x="{x}" y="{y}" width="{_num(w * px)}" '
            f'height="{_num(h * px)}" fill="{fill}" stroke="{INK}" stroke-width="1"/>'
        )
    _outline(canvas, t.region, "outline")
    if opts.show_arrows and isinstance(t.region, AztecDiamond) and t.region.order > 0:
        f = field_from_outer_tiling(t)
        if opts.show_bold_edges:
            _bold(canvas, f)
        _arrows(canvas, f)
    if opts.show_nodes:
        _dots(canvas, region_nodes(t.region))
    return canvas.document()


def _bold(canvas: _Canvas, f: ArrowField) -> None:
    for e in sorted(bold_edges(f)):
        x1, y1 = canvas.at(*e.a)
        x2, y2 = canvas.at(*e.b)
        canvas.add(
            f'<line class="bold" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{BOLD_INK}" stroke-width="3"/>'
        )


def render_field(f: ArrowField, opts: RenderOptions = RenderOptions(show_arrows=True)) -> str:
    bad = validate_field(f)
    if bad:
        raise ValueError(f"invalid arrow field at nodes {bad}")
    outer = aztec(f.inner_order + 1)
    canvas = _Canvas(outer, opts.cell_px)
    _outline(canvas, outer, "outline")
    _outline(canvas, aztec(f.inner_order), "inner-outline", ' stroke-dasharray="4 3"')
    if opts.show_bold_edges:
        _bold(canvas, f)
    _arrows(canvas, f)
    if opts.show_nodes:
        _dots(canvas, (p for pair in f.frame.corners for p in pair))
    return canvas.document()
