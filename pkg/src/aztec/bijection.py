"""Decomposition of a field into forced dominoes and free 2x2 squares.

For each cell the two sides meeting at its arrow head are *bold*.  Cutting the
carrier (``A_{n+1}`` for an outward field, ``A_n`` for an inward one) along the
bold sides leaves pieces that are single dominoes or 2x2 squares centred on
repelling nodes.  A square can be filled horizontally or vertically; every other
piece is forced.  So a field with ``r`` repelling nodes comes from exactly
``2**r`` tilings, and :func:`tilings_for_field` indexes them by a bit vector:
squares sorted row-major by centre, bit 0 meaning two horizontal dominoes.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .arrowfield import (
    ArrowField,
    FieldOrientation,
    census,
    field_from_inner_tiling,
    field_from_outer_tiling,
    flip,
    line_balance,
    orientation,
    repelling_nodes,
)
from .geometry import AztecDiamond, Cell, NodeContext, Point, aztec
from .tiling import H, V, Domino, Tiling, enumerate_tilings


class MalformedComponentError(ValueError):
    pass


class MixedOrientationError(ValueError):
    pass


class ChoiceLengthMismatchError(ValueError):
    pass


class GuardExceededError(ValueError):
    pass


class Edge(NamedTuple):
    """Unit lattice segment; endpoints stored in sorted order."""

    a: Point
    b: Point

    @classmethod
    def of(cls, p: Point, q: Point) -> Edge:
        p, q = Point(*p), Point(*q)
        if abs(p.x - q.x) + abs(p.y - q.y) != 1:
            raise ValueError(f"{p} and {q} are not lattice neighbours")
        return cls(p, q) if p <= q else cls(q, p)


class DominoComponent(NamedTuple):
    domino: Domino

    @property
    def cells(self) -> tuple[Cell, ...]:
        return self.domino.cells


class SquareComponent(NamedTuple):
    center: Point

    @property
    def cells(self) -> tuple[Cell, ...]:
        x, y = self.center
        return Cell(x - 1, y - 1), Cell(x, y - 1), Cell(x - 1, y), Cell(x, y)


Component = DominoComponent | SquareComponent


@dataclass(frozen=True, eq=False)
class Decomposition:
    field: ArrowField
    carrier: AztecDiamond
    components: tuple[Component, ...]

    @property
    def squares(self) -> tuple[SquareComponent, ...]:
        return tuple(c for c in self.components if isinstance(c, SquareComponent))

    @property
    def free_choices(self) -> int:
        return len(self.squares)


def _side_edges(cell: Cell, head: Point) -> tuple[Edge, Edge]:
    k, l = cell
    hx, hy = head
    return Edge(Point(k, hy), Point(k + 1, hy)), Edge(Point(hx, l), Point(hx, l + 1))


def bold_edges(f: ArrowField) -> frozenset[Edge]:
    out: set[Edge] = set()
    for cell, head in f.heads().items():
        out.update(_side_edges(cell, head))
    return frozenset(out)


def decompose(f: ArrowField) -> Decomposition:
    """Cut the carrier along the bold edges and identify the pieces."""
    o = orientation(f)
    if o is FieldOrientation.MIXED:
        raise MixedOrientationError("decompose needs an outward or inward pointing field")
    n = f.inner_order
    fr = f.frame
    outward = o is FieldOrientation.OUTWARD
    carrier = aztec(n + 1 if outward else n)
    member = fr.full if outward else fr.inner_mask
    bits = f.bits
    cells = fr.cells
    heads = [fr.corners[i][(bits >> i) & 1] for i in range(fr.size)]

    # union-find over cell indices; neighbours are joined across a shared side
    # that neither of them marks as bold
    parent = list(range(fr.size))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(fr.size):
        if not (member >> i) & 1:
            continue
        k, l = cells[i]
        hx, hy = heads[i]
        j = fr.right[i]
        if j >= 0 and (member >> j) & 1 and hx != k + 1 and heads[j][0] != k + 1:
            parent[find(j)] = find(i)
        j = fr.up[i]
        if j >= 0 and (member >> j) & 1 and hy != l + 1 and heads[j][1] != l + 1:
            parent[find(j)] = find(i)

    groups: dict[int, list[Cell]] = {}
    for i in range(fr.size):
        if (member >> i) & 1:
            groups.setdefault(find(i), []).append(cells[i])

    repelling = set(repelling_nodes(f))
    # cells are visited in canonical order, so each group is already row-major
    # and the groups come out ordered by their first cell
    components = tuple(_identify(g, repelling) for g in groups.values())
    return Decomposition(f, carrier, components)


def _identify(cells: list[Cell], repelling: set[Point]) -> Component:
    first = cells[0]
    if len(cells) == 2:
        second = cells[1]
        if second == Cell(first.x + 1, first.y):
            return DominoComponent(Domino(first, H))
        if second == Cell(first.x, first.y + 1):
            return DominoComponent(Domino(first, V))
    elif len(cells) == 4:
        square = SquareComponent(Point(first.x + 1, first.y + 1))
        if list(square.cells) == cells:
            if square.center not in repelling:
                raise MalformedComponentError(
                    f"2x2 component centred at {square.center} but the node is not repelling"
                )
            return square
    raise MalformedComponentError(f"component {cells} is neither a domino nor a 2x2 square")


def _square_dominoes(square: SquareComponent, bit: int) -> tuple[Domino, Domino]:
    x, y = square.center
    if bit:
        return Domino(Cell(x - 1, y - 1), V), Domino(Cell(x, y - 1), V)
    return Domino(Cell(x - 1, y - 1), H), Domino(Cell(x - 1, y), H)


def fill(d: Decomposition, choice: Sequence[int]) -> Tiling:
    squares = d.squares
    if len(choice) != len(squares):
        raise ChoiceLengthMismatchError(
            f"expected {len(squares)} choice bits, got {len(choice)}"
        )
    dominoes = [c.domino for c in d.components if isinstance(c, DominoComponent)]
    for sq, bit in zip(squares, choice):
        dominoes.extend(_square_dominoes(sq, bit))
    return Tiling(d.carrier, dominoes)


def tilings_for_field(f: ArrowField, choice: Sequence[int]) -> Tiling:
    return fill(decompose(f), choice)


def all_tilings_for_field(f: ArrowField) -> Iterator[Tiling]:
    d = decompose(f)
    for choice in itertools.product((0, 1), repeat=d.free_choices):
        yield fill(d, choice)


def choice_for_tiling(d: Decomposition, t: Tiling) -> tuple[int, ...] | None:
    """The choice vector that reproduces ``t`` from ``d``, or None if ``t`` does not fit."""
    if t.region != d.carrier:
        return None
    choice = []
    for sq in d.squares:
        if set(_square_dominoes(sq, 0)) <= t.dominoes:
            choice.append(0)
        elif set(_square_dominoes(sq, 1)) <= t.dominoes:
            choice.append(1)
        else:
            return None
    return tuple(choice) if fill(d, choice).dominoes == t.dominoes else None


def horizontal_component_count(d: Decomposition) -> int:
    return sum(
        1 for c in d.components if isinstance(c, DominoComponent) and c.domino.orientation is H
    )


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


@dataclass
class RecursionReport:
    n: int
    checks: list[Check] = field(default_factory=list)
    outward_fields: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in self.checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_text(self) -> str:
        lines = [f"recursion n={self.n}"]
        for c in self.checks:
            lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
        return "\n".join(lines)


RECURSION_GUARD = 4


def verify_recursion(n: int, guard: int = RECURSION_GUARD) -> RecursionReport:
    """Check T_{n+1} = 2^{n+1} T_n through the field grouping, by full enumeration."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > guard:
        raise GuardExceededError(f"verify_recursion limited to n <= {guard}, got {n}")
    ctx = NodeContext(n)
    report = RecursionReport(n)

    outer_groups: dict[ArrowField, int] = defaultdict(int)
    t_outer = 0
    for t in enumerate_tilings(AztecDiamond(n + 1)):
        outer_groups[field_from_outer_tiling(t, ctx)] += 1
        t_outer += 1
    inner_groups: dict[ArrowField, int] = defaultdict(int)
    t_inner = 0
    for t in enumerate_tilings(AztecDiamond(n)):
        inner_groups[field_from_inner_tiling(t, ctx)] += 1
        t_inner += 1
    report.outward_fields = len(outer_groups)

    bad_group, bad_balance, bad_shift = [], [], []
    flipped_sum = 0
    for f, size in outer_groups.items():
        cen = census(f)
        d = decompose(f)
        if size != 1 << cen.repelling or d.free_choices != cen.repelling:
            bad_group.append(f)
        lines = line_balance(f)
        if (
            cen.repelling - cen.attracting != n + 1
            or any(bf - fb != 1 for bf, fb in lines)
            or sum(bf for bf, _ in lines) != cen.repelling
            or sum(fb for _, fb in lines) != cen.attracting
        ):
            bad_balance.append(f)
        g = flip(f)
        r_flip = census(g).repelling
        if cen.repelling != r_flip + n + 1:
            bad_shift.append(f)
        flipped_sum += 1 << r_flip

    def _detail(bad: list[ArrowField], ok: str) -> str:
        if not bad:
            return ok
        return f"{len(bad)} failing field(s), first: {json.dumps(bad[0].to_json())}"

    report.checks.append(Check(
        "group_size", not bad_group,
        _detail(bad_group, f"{len(outer_groups)} outward fields, each group has 2^r tilings"),
    ))
    report.checks.append(Check(
        "node_balance", not bad_balance,
        _detail(bad_balance, f"r - a = {n + 1} and every line has bf - fb = 1"),
    ))
    report.checks.append(Check(
        "flip_shift", not bad_shift,
        _detail(bad_shift, f"r(F) = r(flip F) + {n + 1} for every outward field"),
    ))

    flipped = {flip(f) for f in outer_groups}
    bad_inner = [
        g for g, size in inner_groups.items()
        if g not in flipped or size != 1 << census(g).repelling
    ]
    inner_ok = not bad_inner and set(inner_groups) == flipped and flipped_sum == t_inner
    report.checks.append(Check(
        "inner_sum", inner_ok,
        f"sum 2^r(flip F) = {flipped_sum}, T_{n} = {t_inner}"
        + ("" if not bad_inner else "; " + _detail(bad_inner, "")),
    ))
    report.checks.append(Check(
        "recursion", t_outer == (1 << (n + 1)) * t_inner,
        f"T_{n + 1} = {t_outer}, 2^{n + 1} * T_{n} = {(1 << (n + 1)) * t_inner}",
    ))
    return report
