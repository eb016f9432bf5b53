"""Dominoes, tilings, and exact counting.

Counting is done by a broken-profile sweep over the region's bounding box in
row-major order.  The profile is a ``width``-bit word: bit ``j`` says whether the
next cell to be visited in column ``j`` is already covered.  Cells outside the
region are treated as pre-covered, so the same sweep handles rectangles and
Aztec diamonds.  Counts are Python ints, hence exact at any size.
"""

from __future__ import annotations

import enum
import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterator, NamedTuple

from .geometry import AztecDiamond, Cell, Rectangle, Region

ENUMERATION_GUARD = 6


class Orientation(str, enum.Enum):
    HORIZONTAL = "h"
    VERTICAL = "v"


H = Orientation.HORIZONTAL
V = Orientation.VERTICAL


class Domino(NamedTuple):
    """A 1x2 domino named by its lower-left cell."""

    cell: Cell
    orientation: Orientation

    @property
    def cells(self) -> tuple[Cell, Cell]:
        x, y = self.cell
        if self.orientation is H:
            return self.cell, Cell(x + 1, y)
        return self.cell, Cell(x, y + 1)

    def corners(self) -> tuple[tuple[int, int], ...]:
        x, y = self.cell
        if self.orientation is H:
            return ((x, y), (x + 2, y), (x, y + 1), (x + 2, y + 1))
        return ((x, y), (x + 1, y), (x, y + 2), (x + 1, y + 2))


def domino(x: int, y: int, o: str | Orientation) -> Domino:
    return Domino(Cell(x, y), Orientation(o))


@dataclass(frozen=True)
class Tiling:
    """A set of dominoes over a region.  Construction does not validate."""

    region: Region
    dominoes: frozenset[Domino]

    def __init__(self, region: Region, dominoes) -> None:
        object.__setattr__(self, "region", region)
        object.__setattr__(self, "dominoes", frozenset(dominoes))

    def sorted_dominoes(self) -> list[Domino]:
        return sorted(self.dominoes, key=lambda d: (d.cell.y, d.cell.x, d.orientation.value))

    def horizontal_count(self) -> int:
        return sum(1 for d in self.dominoes if d.orientation is H)

    def cover_map(self) -> dict[Cell, Domino]:
        """Cell -> covering domino.  Assumes the tiling is valid."""
        out = {}
        for d in self.dominoes:
            a, b = d.cells
            out[a] = d
            out[b] = d
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "region": region_to_json(self.region),
            "dominoes": [
                {"x": d.cell.x, "y": d.cell.y, "o": d.orientation.value}
                for d in self.sorted_dominoes()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Tiling:
        region = region_from_json(data["region"])
        return cls(region, (domino(d["x"], d["y"], d["o"]) for d in data["dominoes"]))


def region_to_json(region: Region) -> dict[str, Any]:
    if isinstance(region, AztecDiamond):
        return {"kind": "aztec", "order": region.order}
    if isinstance(region, Rectangle):
        return {"kind": "rect", "w": region.width, "h": region.height}
    raise TypeError(f"no JSON form for {region!r}")


def region_from_json(data: dict[str, Any]) -> Region:
    kind = data.get("kind")
    if kind == "aztec":
        return AztecDiamond(int(data["order"]))
    if kind == "rect":
        return Rectangle(int(data["w"]), int(data["h"]))
    raise ValueError(f"unknown region kind {kind!r}")


class Violation(NamedTuple):
    kind: str  # "uncovered" | "doubly_covered" | "outside_region" | "odd_horizontal"
    cells: tuple[Cell, ...]

    def __str__(self) -> str:
        where = ", ".join(f"({c.x},{c.y})" for c in self.cells)
        return f"{self.kind}: {where}" if where else self.kind


class InvalidTilingError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("invalid tiling: " + "; ".join(map(str, violations)))


def validate_tiling(t: Tiling) -> list[Violation]:
    """Return the list of violations; an empty list means the tiling is valid."""
    seen: Counter[Cell] = Counter()
    for d in t.dominoes:
        seen.update(d.cells)
    region = t.region
    out: list[Violation] = []
    outside = tuple(sorted((c for c in seen if not region.contains(c)), key=lambda c: (c.y, c.x)))
    if outside:
        out.append(Violation("outside_region", outside))
    double = tuple(sorted((c for c, k in seen.items() if k > 1), key=lambda c: (c.y, c.x)))
    if double:
        out.append(Violation("doubly_covered", double))
    missing = tuple(c for c in region.cells if c not in seen)
    if missing:
        out.append(Violation("uncovered", missing))
    if not out and isinstance(region, AztecDiamond) and t.horizontal_count() % 2:
        out.append(Violation("odd_horizontal", ()))
    return out


def check_tiling(t: Tiling) -> Tiling:
    problems = validate_tiling(t)
    if problems:
        raise InvalidTilingError(problems)
    return t


def enumerate_tilings(region: Region) -> Iterator[Tiling]:
    """Yield every tiling once, by backtracking on the first uncovered cell.

    The horizontal placement is tried before the vertical one, so the order is
    deterministic and golden tests may index into it.
    """
    cells = region.cells
    if len(cells) % 2:
        return
    covered: set[Cell] = set()
    chosen: list[Domino] = []
    contains = region.contains

    def walk(start: int) -> Iterator[Tiling]:
        i = start
        while i < len(cells) and cells[i] in covered:
            i += 1
        if i == len(cells):
            yield Tiling(region, chosen)
            return
        c = cells[i]
        for o, other in ((H, Cell(c.x + 1, c.y)), (V, Cell(c.x, c.y + 1))):
            if contains(other) and other not in covered:
                covered.add(c)
                covered.add(other)
                chosen.append(Domino(c, o))
                yield from walk(i + 1)
                chosen.pop()
                covered.discard(c)
                covered.discard(other)

    yield from walk(0)


def count_tilings(region: Region) -> int:
    """Exact number of domino tilings, by broken-profile dynamic programming."""
    x0, y0, x1, y1 = region.bounds()
    width = x1 - x0
    if len(region.cells) % 2:
        return 0
    inside = region.contains
    states: dict[int, int] = {0: 1}
    for y in range(y0, y1):
        for j in range(width):
            x = x0 + j
            bit = 1 << j
            nxt: dict[int, int] = {}
            here = inside((x, y))
            right_ok = j + 1 < width and inside((x + 1, y))
            up_ok = inside((x, y + 1))
            for mask, ways in states.items():
                if mask & bit:
                    # already covered from below
                    key = mask ^ bit
                    nxt[key] = nxt.get(key, 0) + ways
                    continue
                if not here:
                    nxt[mask] = nxt.get(mask, 0) + ways
                    continue
                if right_ok and not mask & (bit << 1):
                    key = mask | (bit << 1)
                    nxt[key] = nxt.get(key, 0) + ways
                if up_ok:
                    key = mask | bit
                    nxt[key] = nxt.get(key, 0) + ways
            states = nxt
    return states.get(0, 0)


def aztec_closed_form(n: int) -> int:
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    return 1 << (n * (n + 1) // 2)


def kasteleyn_square(n: int) -> float:
    """Kasteleyn/Temperley-Fisher product for the n x n square, n even (float)."""
    if n < 0 or n % 2:
        raise ValueError(f"kasteleyn_square needs an even n >= 0, got {n}")
    prod = 1.0
    half = n // 2
    for j in range(1, half + 1):
        cj = math.cos(j * math.pi / (n + 1)) ** 2
        for k in range(1, half + 1):
            prod *= cj + math.cos(k * math.pi / (n + 1)) ** 2
    return 2.0 ** (n * n / 2) * prod


def horizontal_histogram(
    n: int,
    source: str = "enumerate",
    count: int = 0,
    seed: int | None = None,
) -> dict[int, int]:
    """Bucket tilings of A_n by half their number of horizontal dominoes.

    ``source="enumerate"`` is exact (n <= ENUMERATION_GUARD);
    ``source="sample"`` draws ``count`` uniform samples.
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if source == "enumerate":
        if n > ENUMERATION_GUARD:
            raise ValueError(f"exact histogram limited to n <= {ENUMERATION_GUARD}, got {n}")
        tilings: Iterator[Tiling] = enumerate_tilings(AztecDiamond(n))
    elif source == "sample":
        from .sampler import DEFAULT_SEED, sample_batch

        tilings = sample_batch(n, count, DEFAULT_SEED if seed is None else seed)
    else:
        raise ValueError(f"unknown source {source!r}")

    hist: dict[int, int] = {}
    for t in tilings:
        h = t.horizontal_count()
        if h % 2:
            raise InvalidTilingError([Violation("odd_horizontal", ())])
        hist[h // 2] = hist.get(h // 2, 0) + 1
    return dict(sorted(hist.items()))
