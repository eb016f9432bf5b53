"""Fields of arrows on A_{n+1}.

Every cell of ``A_{n+1}`` has exactly two node corners, on one diagonal; we call
the one with the smaller ``y`` the *lower* corner.  A field stores one bit per
cell in canonical order: bit set means the arrow's head is the upper corner.
Reversing every arrow is then a complement of the word.

Around an interior node ``N`` the four adjacent cells are SW, SE, NW, NE.  The
head sits at ``N`` for SW/SE when their bit is set and for NW/NE when it is
clear, which gives the local rules:

* attracting: ``(sw, se, nw, ne) == (1, 1, 0, 0)``
* repelling:  ``(sw, se, nw, ne) == (0, 0, 1, 1)``
* transient:  ``sw == ne`` and ``nw == se`` (collinear arrows agree)

Those are six of the sixteen configurations; the other ten are invalid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Mapping, NamedTuple

from .geometry import (
    AztecDiamond,
    Cell,
    NodeContext,
    Point,
    adjacent_cells,
    interior_nodes_ordered,
    node_corners,
    aztec,
    taxicab,
)
from .tiling import Tiling, check_tiling


class NodeClass(enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    TRANSIENT = "transient"


class FieldOrientation(enum.Enum):
    OUTWARD = "outward"
    INWARD = "inward"
    MIXED = "mixed"


class InvalidPatternError(ValueError):
    def __init__(self, node: Point):
        self.node = node
        super().__init__(f"arrows around node ({node.x},{node.y}) form no valid pattern")


class NotInteriorNodeError(ValueError):
    pass


class FieldCensus(NamedTuple):
    repelling: int
    attracting: int
    transient: int


class _Frame:
    """Index tables for the pair A_n ⊂ A_{n+1}, shared by all fields of order n."""

    def __init__(self, n: int):
        self.n = n
        outer = aztec(n + 1)
        inner = aztec(n)
        self.cells = outer.cells
        self.index = outer.index
        self.size = len(self.cells)
        self.full = (1 << self.size) - 1
        self.corners = tuple(node_corners(c, n) for c in self.cells)
        # index of the right / upper neighbour inside A_{n+1}, or -1
        self.right = tuple(self.index.get(Cell(c.x + 1, c.y), -1) for c in self.cells)
        self.up = tuple(self.index.get(Cell(c.x, c.y + 1), -1) for c in self.cells)

        boundary = 0
        outward = 0
        inner_mask = 0
        for i, c in enumerate(self.cells):
            if inner.contains(c):
                inner_mask |= 1 << i
                continue
            boundary |= 1 << i
            lo, hi = self.corners[i]
            # the two node corners of a boundary cell never tie in taxicab norm
            assert taxicab(lo) != taxicab(hi), c
            if taxicab(hi) > taxicab(lo):
                outward |= 1 << i
        self.boundary_mask = boundary
        self.outward_bits = outward
        self.inward_bits = boundary & ~outward
        self.inner_mask = inner_mask

        self.nodes = interior_nodes_ordered(NodeContext(n))
        self.node_index = {p: j for j, p in enumerate(self.nodes)}
        self.around = tuple(tuple(self.index[c] for c in adjacent_cells(p)) for p in self.nodes)

        # SW-NE node lines y - x = c; the arrows on a line are the cells whose
        # node diagonal runs SW-NE along it, ordered from SW to NE
        self.lines = []
        for c in range(-n, n + 1, 2):
            line = [
                i
                for i, cell in enumerate(self.cells)
                if (cell.x + cell.y - n) % 2 == 0 and cell.y - cell.x == c
            ]
            line.sort(key=lambda i: self.cells[i].x)
            self.lines.append(tuple(line))


@lru_cache(maxsize=64)
def frame(n: int) -> _Frame:
    return _Frame(n)


def classify_bits(sw: int, se: int, nw: int, ne: int) -> NodeClass | None:
    """Local classification from the four adjacent bits; ``None`` if invalid."""
    if sw == ne and nw == se:
        return NodeClass.TRANSIENT
    if sw and se and not nw and not ne:
        return NodeClass.ATTRACTING
    if not sw and not se and nw and ne:
        return NodeClass.REPELLING
    return None


@dataclass(frozen=True)
class ArrowField:
    inner_order: int
    bits: int

    @property
    def ctx(self) -> NodeContext:
        return NodeContext(self.inner_order)

    @property
    def frame(self) -> _Frame:
        return frame(self.inner_order)

    def bit(self, cell: Cell) -> int:
        return (self.bits >> self.frame.index[cell]) & 1

    def head(self, cell: Cell) -> Point:
        return self.frame.corners[self.frame.index[cell]][self.bit(cell)]

    def tail(self, cell: Cell) -> Point:
        return self.frame.corners[self.frame.index[cell]][1 - self.bit(cell)]

    def heads(self) -> dict[Cell, Point]:
        fr = self.frame
        return {c: fr.corners[i][(self.bits >> i) & 1] for i, c in enumerate(fr.cells)}

    @classmethod
    def from_heads(cls, ctx: NodeContext, heads: Mapping[Cell, Point]) -> ArrowField:
        fr = frame(ctx.inner_order)
        if set(heads) != set(fr.cells):
            raise ValueError("heads must cover exactly the cells of A_{n+1}")
        bits = 0
        for i, c in enumerate(fr.cells):
            lo, hi = fr.corners[i]
            h = Point(*heads[c])
            if h == hi:
                bits |= 1 << i
            elif h != lo:
                raise ValueError(f"head {h} of cell {c} is not one of its node corners")
        return cls(ctx.inner_order, bits)

    def to_json(self) -> dict[str, Any]:
        fr = self.frame
        arrows = []
        for i, c in enumerate(fr.cells):
            h = fr.corners[i][(self.bits >> i) & 1]
            arrows.append({"x": c.x, "y": c.y, "hx": h.x, "hy": h.y})
        return {"inner_order": self.inner_order, "arrows": arrows}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> ArrowField:
        ctx = NodeContext(int(data["inner_order"]))
        heads = {Cell(a["x"], a["y"]): Point(a["hx"], a["hy"]) for a in data["arrows"]}
        return cls.from_heads(ctx, heads)


def _tiling_bits(t: Tiling, n: int, fr: _Frame) -> int:
    bits = 0
    index = fr.index
    corner_table = fr.corners
    for d in t.dominoes:
        corners = d.corners()
        for c in d.cells:
            i = index[c]
            lo, hi = corner_table[i]
            at_lo = lo in corners
            at_hi = hi in corners
            assert at_lo != at_hi, f"head rule is ambiguous at {c}"
            if at_hi:
                bits |= 1 << i
    return bits


def _context_for(t: Tiling, ctx: NodeContext | None, offset: int) -> NodeContext:
    if not isinstance(t.region, AztecDiamond):
        raise ValueError("arrow fields are only defined for Aztec diamond tilings")
    if ctx is None:
        ctx = NodeContext(t.region.order - offset)
    if t.region.order != ctx.inner_order + offset:
        raise ValueError(
            f"tiling of A_{t.region.order} does not match inner order {ctx.inner_order}"
        )
    return ctx


def field_from_outer_tiling(t: Tiling, ctx: NodeContext | None = None) -> ArrowField:
    """Arrow field of a tiling of A_{n+1}: each arrow points to its domino's node corner."""
    ctx = _context_for(t, ctx, 1)
    check_tiling(t)
    n = ctx.inner_order
    return ArrowField(n, _tiling_bits(t, n, frame(n)))


def field_from_inner_tiling(t: Tiling, ctx: NodeContext | None = None) -> ArrowField:
    """Arrow field of a tiling of A_n, with every boundary arrow pointing inward."""
    ctx = _context_for(t, ctx, 0)
    check_tiling(t)
    n = ctx.inner_order
    fr = frame(n)
    return ArrowField(n, _tiling_bits(t, n, fr) | fr.inward_bits)


def _node_bits(f: ArrowField, j: int) -> tuple[int, int, int, int]:
    b = f.bits
    sw, se, nw, ne = f.frame.around[j]
    return (b >> sw) & 1, (b >> se) & 1, (b >> nw) & 1, (b >> ne) & 1


def classify(f: ArrowField, node: Point) -> NodeClass:
    j = f.frame.node_index.get(Point(*node))
    if j is None:
        raise NotInteriorNodeError(f"{node} is not an interior node for n={f.inner_order}")
    cls = classify_bits(*_node_bits(f, j))
    if cls is None:
        raise InvalidPatternError(Point(*node))
    return cls


def invalid_nodes(f: ArrowField) -> list[Point]:
    fr = f.frame
    return [p for j, p in enumerate(fr.nodes) if classify_bits(*_node_bits(f, j)) is None]


def validate_field(f: ArrowField) -> list[Point]:
    """Interior nodes whose arrows match none of the six patterns; empty if valid."""
    return invalid_nodes(f)


def is_valid(f: ArrowField) -> bool:
    return not invalid_nodes(f)


def orientation(f: ArrowField) -> FieldOrientation:
    fr = f.frame
    on_boundary = f.bits & fr.boundary_mask
    if on_boundary == fr.outward_bits:
        return FieldOrientation.OUTWARD
    if on_boundary == fr.inward_bits:
        return FieldOrientation.INWARD
    return FieldOrientation.MIXED


def flip(f: ArrowField) -> ArrowField:
    return ArrowField(f.inner_order, f.bits ^ f.frame.full)


def census(f: ArrowField) -> FieldCensus:
    counts = {NodeClass.REPELLING: 0, NodeClass.ATTRACTING: 0, NodeClass.TRANSIENT: 0}
    for j, p in enumerate(f.frame.nodes):
        cls = classify_bits(*_node_bits(f, j))
        if cls is None:
            raise InvalidPatternError(p)
        counts[cls] += 1
    return FieldCensus(
        counts[NodeClass.REPELLING], counts[NodeClass.ATTRACTING], counts[NodeClass.TRANSIENT]
    )


def repelling_nodes(f: ArrowField) -> list[Point]:
    """Repelling interior nodes in row-major order."""
    fr = f.frame
    return [p for j, p in enumerate(fr.nodes) if _node_bits(f, j) == (0, 0, 1, 1)]


def line_balance(f: ArrowField) -> list[tuple[int, int]]:
    """Direction changes along each SW-NE node line of an outward field.

    Lines are ordered by ``y - x`` ascending; each entry is
    ``(backward->forward changes, forward->backward changes)``.
    """
    if orientation(f) is not FieldOrientation.OUTWARD:
        raise ValueError("line_balance needs an outward pointing field")
    out = []
    for line in f.frame.lines:
        seq = [(f.bits >> i) & 1 for i in line]
        bf = sum(1 for a, b in zip(seq, seq[1:]) if not a and b)
        fb = sum(1 for a, b in zip(seq, seq[1:]) if a and not b)
        out.append((bf, fb))
    return out
