"""The invariant battery behind ``aztec verify``.

Each check returns a :class:`~aztec.bijection.Check`.  ``max_order`` bounds the
inner order ``n`` of the field-level checks; counting checks always cover
orders ``0..max(10, max_order)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from typing import Callable

from .arrowfield import (
    ArrowField,
    FieldOrientation,
    census,
    classify_bits,
    field_from_outer_tiling,
    flip,
    is_valid,
    line_balance,
    orientation,
    NodeClass,
)
from .bijection import (
    RECURSION_GUARD,
    Check,
    choice_for_tiling,
    decompose,
    horizontal_component_count,
    verify_recursion,
)
from .geometry import AztecDiamond, Rectangle
from .render import RenderOptions, render_tiling
from .sampler import DEFAULT_SEED, SampleSpec, sample_batch, sample_uniform
from .tiling import (
    aztec_closed_form,
    count_tilings,
    enumerate_tilings,
    horizontal_histogram,
    kasteleyn_square,
    validate_tiling,
)

DP_ORDERS = 10
ENUM_ORDERS = 4
FIELD_ORDERS = 3
CHI_SQUARE_SAMPLES = 64_000
CHI_SQUARE_LIMIT = 110.0
KASTELEYN_RTOL = 1e-6
ROUND_TRIP_SAMPLES = 1000


def outward_fields(n: int) -> dict[ArrowField, int]:
    """Distinct outward fields of the tilings of A_{n+1}, with multiplicities."""
    out: Counter[ArrowField] = Counter()
    for t in enumerate_tilings(AztecDiamond(n + 1)):
        out[field_from_outer_tiling(t)] += 1
    return dict(out)


def check_count_dp(max_order: int) -> Check:
    top = max(DP_ORDERS, max_order)
    bad = [n for n in range(top + 1) if count_tilings(AztecDiamond(n)) != aztec_closed_form(n)]
    return Check("count_dp", not bad, f"orders 0..{top}" + (f", failing {bad}" if bad else ""))


def check_count_enum(max_order: int) -> Check:
    top = min(max_order + 1, ENUM_ORDERS)
    bad = []
    for n in range(top + 1):
        if sum(1 for _ in enumerate_tilings(AztecDiamond(n))) != aztec_closed_form(n):
            bad.append(n)
    return Check("count_enum", not bad, f"orders 0..{top}" + (f", failing {bad}" if bad else ""))


def check_recursion(n: int) -> Check:
    report = verify_recursion(n)
    failed = [c.name for c in report.checks if not c.passed]
    detail = f"{report.outward_fields} outward fields" + (f", failing {failed}" if failed else "")
    return Check(f"recursion_n{n}", report.passed, detail)


def check_node_balance(max_order: int) -> Check:
    top = min(max_order, FIELD_ORDERS)
    bad = []
    for n in range(top + 1):
        for f in outward_fields(n):
            cen = census(f)
            lines = line_balance(f)
            if cen.repelling - cen.attracting != n + 1 or any(bf - fb != 1 for bf, fb in lines):
                bad.append(n)
                break
    return Check("node_balance", not bad, f"inner orders 0..{top}" + (f", failing {bad}" if bad else ""))


def brute_force_fields(n: int) -> list[ArrowField]:
    """Every pattern-valid field at inner order n, by trying all head assignments."""
    size = len(AztecDiamond(n + 1).cells)
    return [f for f in (ArrowField(n, b) for b in range(1 << size)) if is_valid(f)]


def check_node_balance_brute_force() -> Check:
    valid = brute_force_fields(1)
    outward = [f for f in valid if orientation(f) is FieldOrientation.OUTWARD]
    ok = bool(outward) and all(census(f).repelling - census(f).attracting == 2 for f in outward)
    return Check(
        "node_balance_brute_force", ok,
        f"{len(valid)} valid fields on A_2, {len(outward)} outward, all with r - a = 2",
    )


def local_pattern_census() -> Counter[NodeClass | None]:
    return Counter(classify_bits(*bits) for bits in itertools.product((0, 1), repeat=4))


def check_six_patterns() -> Check:
    c = local_pattern_census()
    ok = (
        c[NodeClass.ATTRACTING], c[NodeClass.REPELLING], c[NodeClass.TRANSIENT], c[None]
    ) == (1, 1, 4, 10)
    return Check(
        "six_patterns", ok,
        f"attracting {c[NodeClass.ATTRACTING]}, repelling {c[NodeClass.REPELLING]}, "
        f"transient {c[NodeClass.TRANSIENT]}, invalid {c[None]}",
    )


def check_h_histogram(max_order: int) -> Check:
    top = min(max_order + 1, ENUM_ORDERS)
    bad = []
    for n in range(top + 1):
        m = n * (n + 1) // 2
        if horizontal_histogram(n) != {k: math.comb(m, k) for k in range(m + 1)}:
            bad.append(n)
    return Check("h_histogram", not bad, f"orders 0..{top}" + (f", failing {bad}" if bad else ""))


def check_h_flip(max_order: int) -> Check:
    top = min(max_order, FIELD_ORDERS)
    bad = 0
    total = 0
    for n in range(top + 1):
        for f in outward_fields(n):
            total += 1
            if horizontal_component_count(decompose(f)) != horizontal_component_count(decompose(flip(f))):
                bad += 1
    return Check("h_flip", not bad, f"{total} outward fields, {bad} mismatches")


def check_flip_involution(max_order: int) -> Check:
    top = min(max_order, FIELD_ORDERS)
    bad = 0
    total = 0
    for n in range(top + 1):
        for f in outward_fields(n):
            total += 1
            g = flip(f)
            if flip(g) != f or orientation(g) is not FieldOrientation.INWARD or not is_valid(g):
                bad += 1
    return Check("flip_involution", not bad, f"{total} outward fields, {bad} failures")


def fibonacci_counts(limit: int = 20) -> list[int]:
    return [count_tilings(Rectangle(2, n)) for n in range(1, limit + 1)]


def check_fibonacci(limit: int = 20) -> Check:
    f = fibonacci_counts(limit)
    ok = f[0] == 1 and f[1] == 2 and all(f[i] == f[i - 1] + f[i - 2] for i in range(2, len(f)))
    return Check("fibonacci", ok, f"2xn for n=1..{limit}: f(1)={f[0]}, f(2)={f[1]}, f({limit})={f[-1]}")


def relative_error(approx: float, exact: int) -> float:
    return abs(approx - exact) / exact


def check_kasteleyn() -> Check:
    errors = {}
    for n in (2, 4, 6, 8):
        errors[n] = relative_error(kasteleyn_square(n), count_tilings(Rectangle(n, n)))
    enum_4 = sum(1 for _ in enumerate_tilings(Rectangle(4, 4)))
    ok = all(e < KASTELEYN_RTOL for e in errors.values()) and enum_4 == 36 == count_tilings(Rectangle(4, 4))
    worst = max(errors.values())
    return Check("kasteleyn", ok, f"max relative error {worst:.2e}; 4x4 enumeration {enum_4}")


def chi_square_uniform(counts: Counter, categories: int, total: int) -> float:
    expected = total / categories
    observed = list(counts.values()) + [0] * (categories - len(counts))
    return sum((o - expected) ** 2 / expected for o in observed)


def sampler_chi_square(order: int = 3, samples: int = CHI_SQUARE_SAMPLES, seed: int = DEFAULT_SEED) -> float:
    counts = Counter(t.dominoes for t in sample_batch(order, samples, seed))
    return chi_square_uniform(counts, aztec_closed_form(order), samples)


def check_sampler_uniformity() -> Check:
    stat = sampler_chi_square()
    return Check(
        "sampler_uniformity", stat < CHI_SQUARE_LIMIT,
        f"chi-square {stat:.2f} over {CHI_SQUARE_SAMPLES} samples of A_3 (limit {CHI_SQUARE_LIMIT}, df 63)",
    )


def round_trip_failures(samples: int = ROUND_TRIP_SAMPLES, seed: int = DEFAULT_SEED) -> list[str]:
    failures = []
    for i in range(samples):
        order = 1 + i % 6
        spec = SampleSpec(order, seed + i)
        t = sample_uniform(spec)
        f = field_from_outer_tiling(t)
        if not is_valid(f):
            failures.append(f"{spec}: field invalid")
        elif orientation(f) is not FieldOrientation.OUTWARD:
            failures.append(f"{spec}: field not outward")
        elif choice_for_tiling(decompose(f), t) is None:
            failures.append(f"{spec}: tiling not recovered")
        elif flip(flip(f)) != f:
            failures.append(f"{spec}: flip not an involution")
    return failures


def check_round_trip() -> Check:
    failures = round_trip_failures()
    return Check(
        "round_trip", not failures,
        f"{ROUND_TRIP_SAMPLES} samples over orders 1..6" + (f"; first failure {failures[0]}" if failures else ""),
    )


def check_determinism() -> Check:
    spec = SampleSpec(8, 42)
    a, b = sample_uniform(spec), sample_uniform(spec)
    same_json = a.dumps() == b.dumps()
    same_svg = render_tiling(a, RenderOptions(color_classes=True)) == render_tiling(b, RenderOptions(color_classes=True))
    valid = not validate_tiling(a)
    return Check("determinism", same_json and same_svg and valid, "order 8, seed 42: JSON and SVG identical")


def battery(max_order: int) -> list[Callable[[], Check]]:
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    steps: list[Callable[[], Check]] = [
        lambda: check_count_dp(max_order),
        lambda: check_count_enum(max_order),
    ]
    for n in range(1, min(max_order, RECURSION_GUARD) + 1):
        steps.append(lambda n=n: check_recursion(n))
    steps += [
        lambda: check_node_balance(max_order),
        check_node_balance_brute_force,
        check_six_patterns,
        lambda: check_h_histogram(max_order),
        lambda: check_h_flip(max_order),
        lambda: check_flip_involution(max_order),
        check_fibonacci,
        check_kasteleyn,
        check_sampler_uniformity,
        check_round_trip,
        check_determinism,
    ]
    return steps


def run_battery(max_order: int) -> list[Check]:
    return [step() for step in battery(max_order)]
