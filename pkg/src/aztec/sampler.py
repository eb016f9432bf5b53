"""Exact uniform sampling of Aztec diamond tilings by growing one order at a time.

One step takes a tiling ``t`` of ``A_k``, forms its inward field on ``A_{k+1}``,
flips it to an outward field ``g`` and fills each of the ``r(g)`` free 2x2
squares of ``g`` with an independent fair bit.

Why the result is uniform: if ``t`` is uniform over the ``T_k`` tilings of
``A_k``, the inward field ``f`` appears with probability ``2**r(f) / T_k``.  Each
tiling compatible with ``g = flip(f)`` is then chosen with probability
``2**r(f) / T_k * 2**-r(g)``, and ``r(g) = r(f) + k + 1``, so every tiling of
``A_{k+1}`` has probability ``2**-(k+1) / T_k = 1 / T_{k+1}``.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), with the state
transition and output function::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

The initial state is the 64-bit seed.  Fair bits are taken from successive
outputs least significant bit first, 64 per output.  Bits are consumed in the
row-major order of the square centres.  Sample ``i`` of a batch with seed ``s``
uses seed ``(s + i) mod 2**64``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Iterator, NamedTuple

from .arrowfield import field_from_inner_tiling, flip
from .bijection import Decomposition, decompose, fill
from .geometry import AztecDiamond
from .tiling import H, Tiling, check_tiling

MASK64 = (1 << 64) - 1
DEFAULT_SEED = 2024


class RandomSource:
    """SplitMix64 stream handing out fair bits."""

    def __init__(self, seed: int):
        self.state = seed & MASK64
        self._buf = 0
        self._left = 0
        self.bits_consumed = 0

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def bits(self, k: int) -> list[int]:
        out = []
        for _ in range(k):
            if not self._left:
                self._buf = self.next_u64()
                self._left = 64
            out.append(self._buf & 1)
            self._buf >>= 1
            self._left -= 1
        self.bits_consumed += k
        return out


class SampleSpec(NamedTuple):
    order: int
    seed: int = DEFAULT_SEED


# At small orders the same few tilings recur constantly; both steps are pure,
# so they are memoized there.  Above this order caching only costs memory.
CACHE_MAX_ORDER = 5


def _outward_decomposition(t: Tiling) -> Decomposition:
    return decompose(flip(field_from_inner_tiling(t)))


_cached_decomposition = lru_cache(maxsize=4096)(_outward_decomposition)
_cached_fill = lru_cache(maxsize=8192)(fill)


def grow(t: Tiling, rng: RandomSource) -> Tiling:
    """Map a tiling of A_k to a random tiling of A_{k+1}."""
    if t.region.order <= CACHE_MAX_ORDER:
        d = _cached_decomposition(t)
        return _cached_fill(d, tuple(rng.bits(d.free_choices)))
    d = _outward_decomposition(t)
    return fill(d, rng.bits(d.free_choices))


def sample_uniform(spec: SampleSpec) -> Tiling:
    if spec.order < 0:
        raise ValueError(f"order must be >= 0, got {spec.order}")
    rng = RandomSource(spec.seed)
    t = Tiling(AztecDiamond(0), ())
    for _ in range(spec.order):
        t = grow(t, rng)
    return t


def sample_batch(order: int, count: int, seed: int = DEFAULT_SEED) -> Iterator[Tiling]:
    for i in range(count):
        yield sample_uniform(SampleSpec(order, (seed + i) & MASK64))


def sample_statistics(order: int, count: int, seed: int = DEFAULT_SEED) -> dict[str, Any]:
    """Horizontal-count histogram and horizontal occupancy grid over ``count`` samples.

    ``h_occupancy[row][col]`` counts the samples in which cell
    ``(col - order, row - order)`` is covered by a horizontal domino; cells
    outside the diamond are ``None``.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    region = AztecDiamond(order)
    side = 2 * order
    grid: list[list[int | None]] = [
        [0 if region.contains((x - order, y - order)) else None for x in range(side)]
        for y in range(side)
    ]
    hist: dict[int, int] = {}
    for t in sample_batch(order, count, seed):
        check_tiling(t)
        k = t.horizontal_count() // 2
        hist[k] = hist.get(k, 0) + 1
        for d in t.dominoes:
            if d.orientation is H:
                for c in d.cells:
                    grid[c.y + order][c.x + order] += 1
    return {
        "order": order,
        "count": count,
        "hist": {str(k): v for k, v in sorted(hist.items())},
        "h_occupancy": grid,
    }
