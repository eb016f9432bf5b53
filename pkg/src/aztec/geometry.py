"""Lattice vocabulary: points, cells, regions and the node structure of A_n ⊂ A_{n+1}.

A cell is the unit square ``[k, k+1] x [l, l+1]`` and is named by its lower-left
corner ``(k, l)``.  The Aztec diamond of order ``n`` is the union of the cells
meeting the open square ``|x| + |y| < n``; in integer terms that is
``|2k + 1| + |2l + 1| <= 2n``.

Nodes only make sense relative to a fixed pair ``A_n ⊂ A_{n+1}``, so every
node-level query takes a :class:`NodeContext` carrying the inner order ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple


class Point(NamedTuple):
    x: int
    y: int


class Cell(NamedTuple):
    """Unit lattice square identified by its lower-left corner."""

    x: int
    y: int

    @property
    def corner(self) -> Point:
        return Point(self.x, self.y)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        """The four corners in the order SW, SE, NW, NE."""
        x, y = self
        return Point(x, y), Point(x + 1, y), Point(x, y + 1), Point(x + 1, y + 1)


class Region:
    """A finite set of cells with a canonical row-major order (by ``(y, x)``)."""

    def contains(self, cell: Cell) -> bool:
        raise NotImplementedError

    def bounds(self) -> tuple[int, int, int, int]:
        """``(x_min, y_min, x_max, y_max)`` of the cell corners, max exclusive."""
        raise NotImplementedError

    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        x0, y0, x1, y1 = self.bounds()
        return tuple(
            Cell(x, y) for y in range(y0, y1) for x in range(x0, x1) if self.contains(Cell(x, y))
        )

    @cached_property
    def cell_set(self) -> frozenset[Cell]:
        return frozenset(self.cells)

    @cached_property
    def index(self) -> dict[Cell, int]:
        return {c: i for i, c in enumerate(self.cells)}

    def __contains__(self, cell: object) -> bool:
        return isinstance(cell, tuple) and len(cell) == 2 and self.contains(Cell(*cell))

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True, eq=True)
class AztecDiamond(Region):
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"Aztec diamond order must be >= 0, got {self.order}")

    def contains(self, cell: Cell) -> bool:
        return abs(2 * cell[0] + 1) + abs(2 * cell[1] + 1) <= 2 * self.order

    def bounds(self) -> tuple[int, int, int, int]:
        n = self.order
        return (-n, -n, n, n)


@dataclass(frozen=True, eq=True)
class Rectangle(Region):
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise ValueError(f"rectangle sides must be >= 0, got {self.width}x{self.height}")

    def contains(self, cell: Cell) -> bool:
        return 0 <= cell[0] < self.width and 0 <= cell[1] < self.height

    def bounds(self) -> tuple[int, int, int, int]:
        return (0, 0, self.width, self.height)


def region_cells(region: Region) -> list[Cell]:
    return list(region.cells)


@dataclass(frozen=True)
class NodeContext:
    """The fixed pair ``A_n ⊂ A_{n+1}``; ``inner_order`` is ``n``."""

    inner_order: int

    def __post_init__(self) -> None:
        if self.inner_order < 0:
            raise ValueError(f"inner order must be >= 0, got {self.inner_order}")

    @property
    def parity(self) -> int:
        return self.inner_order % 2

    @property
    def inner(self) -> AztecDiamond:
        return aztec(self.inner_order)

    @property
    def outer(self) -> AztecDiamond:
        return aztec(self.inner_order + 1)


@lru_cache(maxsize=128)
def aztec(order: int) -> AztecDiamond:
    """Shared AztecDiamond instance, so its cell tables are built once."""
    return AztecDiamond(order)


def adjacent_cells(p: Point) -> tuple[Cell, Cell, Cell, Cell]:
    """The four cells touching ``p``, in the order SW, SE, NW, NE."""
    x, y = p
    return Cell(x - 1, y - 1), Cell(x, y - 1), Cell(x - 1, y), Cell(x, y)


def is_node(p: Point, ctx: NodeContext) -> bool:
    if (p[0] + p[1] - ctx.inner_order) % 2:
        return False
    outer = ctx.outer
    return any(outer.contains(c) for c in adjacent_cells(Point(*p)))


def interior_nodes(ctx: NodeContext) -> frozenset[Point]:
    return frozenset(_interior_nodes(ctx.inner_order))


@lru_cache(maxsize=None)
def _interior_nodes(n: int) -> tuple[Point, ...]:
    outer = aztec(n + 1)
    found = []
    for y in range(-n - 1, n + 2):
        for x in range(-n - 1, n + 2):
            if (x + y - n) % 2 == 0 and all(outer.contains(c) for c in adjacent_cells(Point(x, y))):
                found.append(Point(x, y))
    return tuple(found)


def interior_nodes_ordered(ctx: NodeContext) -> tuple[Point, ...]:
    """Interior nodes in row-major order."""
    return _interior_nodes(ctx.inner_order)


def cell_node_corners(cell: Cell, ctx: NodeContext) -> tuple[Point, Point]:
    """The two diagonal corners of ``cell`` that are nodes, lower corner first.

    Raises ValueError if the cell is not a lattice square of ``A_{n+1}``.
    """
    if not ctx.outer.contains(cell):
        raise ValueError(f"{cell} is not a cell of A_{ctx.inner_order + 1}")
    return node_corners(cell, ctx.inner_order)


def node_corners(cell: Cell, n: int) -> tuple[Point, Point]:
    x, y = cell
    if (x + y - n) % 2 == 0:
        return Point(x, y), Point(x + 1, y + 1)
    return Point(x + 1, y), Point(x, y + 1)


def boundary_cells(ctx: NodeContext) -> frozenset[Cell]:
    inner = ctx.inner
    return frozenset(c for c in ctx.outer.cells if not inner.contains(c))


def taxicab(p: Point) -> int:
    return abs(p[0]) + abs(p[1])
