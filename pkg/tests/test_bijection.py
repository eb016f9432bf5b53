import json

import pytest
from hypothesis import given, settings, strategies as st

from aztec.arrowfield import (
    ArrowField,
    census,
    field_from_inner_tiling,
    field_from_outer_tiling,
    flip,
    frame,
)
from aztec.bijection import (
    ChoiceLengthMismatchError,
    DominoComponent,
    Edge,
    GuardExceededError,
    MalformedComponentError,
    MixedOrientationError,
    SquareComponent,
    all_tilings_for_field,
    bold_edges,
    choice_for_tiling,
    decompose,
    fill,
    horizontal_component_count,
    tilings_for_field,
    verify_recursion,
)
from aztec.geometry import AztecDiamond, Cell, Point
from aztec.sampler import SampleSpec, sample_uniform
from aztec.tiling import H, V, Domino, Tiling, domino, enumerate_tilings, validate_tiling

A1_H = Tiling(AztecDiamond(1), [domino(-1, -1, "h"), domino(-1, 0, "h")])


def test_edge_of_normalises_and_rejects():
    assert Edge.of((1, 0), (0, 0)) == Edge(Point(0, 0), Point(1, 0))
    with pytest.raises(ValueError):
        Edge.of((0, 0), (1, 1))


def test_bold_edges_of_repelling_a1():
    edges = bold_edges(field_from_outer_tiling(A1_H))
    # every head sits on an outer corner, so the bold set is the boundary of A_1
    assert len(edges) == 8
    assert Edge.of((0, 0), (1, 0)) not in edges
    assert Edge.of((-1, 1), (0, 1)) in edges


def test_bold_edges_touch_heads():
    t = next(enumerate_tilings(AztecDiamond(3)))
    f = field_from_outer_tiling(t)
    heads = set(f.heads().values())
    for e in bold_edges(f):
        assert e.a in heads or e.b in heads


def test_decompose_repelling_a1_is_one_square():
    d = decompose(field_from_outer_tiling(A1_H))
    assert d.components == (SquareComponent(Point(0, 0)),)
    assert d.free_choices == 1
    assert fill(d, [0]) == A1_H
    assert fill(d, [1]).dominoes == {domino(-1, -1, "v"), domino(0, -1, "v")}


def test_decompose_inward_a0_is_empty():
    d = decompose(field_from_inner_tiling(Tiling(AztecDiamond(0), ())))
    assert d.components == ()
    assert fill(d, []) == Tiling(AztecDiamond(0), ())


def test_decompose_rejects_mixed():
    f = field_from_outer_tiling(A1_H)
    with pytest.raises(MixedOrientationError):
        decompose(ArrowField(0, f.bits ^ 1))


def test_decompose_rejects_malformed_components():
    # a pattern-invalid field that is still outward on the boundary: at n=1
    # reverse an interior arrow so a component spans more than a square
    t = next(enumerate_tilings(AztecDiamond(2)))
    f = field_from_outer_tiling(t)
    fr = frame(1)
    interior = [i for i in range(fr.size) if not (fr.boundary_mask >> i) & 1]
    raised = 0
    for i in interior:
        try:
            decompose(ArrowField(1, f.bits ^ (1 << i)))
        except MalformedComponentError:
            raised += 1
    assert raised > 0


@pytest.mark.parametrize("n", range(0, 4))
def test_components_partition_carrier(n):
    for t in enumerate_tilings(AztecDiamond(n + 1)):
        f = field_from_outer_tiling(t)
        d = decompose(f)
        cells = [c for comp in d.components for c in comp.cells]
        assert len(cells) == len(set(cells))
        assert set(cells) == set(d.carrier.cells)
        assert d.free_choices == census(f).repelling
        assert {sq.center for sq in d.squares} <= set(f.frame.nodes)


@pytest.mark.parametrize("n", range(0, 4))
def test_every_tiling_is_recovered_from_its_own_field(n):
    for t in enumerate_tilings(AztecDiamond(n + 1)):
        d = decompose(field_from_outer_tiling(t))
        choice = choice_for_tiling(d, t)
        assert choice is not None
        assert fill(d, choice) == t


@pytest.mark.parametrize("n", range(0, 3))
def test_fill_is_injective_and_consistent(n):
    seen = set()
    for t in enumerate_tilings(AztecDiamond(n + 1)):
        f = field_from_outer_tiling(t)
        if f in seen:
            continue
        seen.add(f)
        group = list(all_tilings_for_field(f))
        assert len(set(group)) == len(group) == 2 ** census(f).repelling
        for g in group:
            assert validate_tiling(g) == []
            assert field_from_outer_tiling(g) == f


def test_choice_for_tiling_rejects_foreign_tiling():
    a = next(enumerate_tilings(AztecDiamond(2)))
    d = decompose(field_from_outer_tiling(a))
    others = [t for t in enumerate_tilings(AztecDiamond(2)) if field_from_outer_tiling(t) != d.field]
    assert all(choice_for_tiling(d, t) is None for t in others)
    assert choice_for_tiling(d, Tiling(AztecDiamond(1), A1_H.dominoes)) is None


def test_choice_length_mismatch():
    f = field_from_outer_tiling(A1_H)
    with pytest.raises(ChoiceLengthMismatchError):
        tilings_for_field(f, [])
    with pytest.raises(ChoiceLengthMismatchError):
        tilings_for_field(f, [0, 1])


def test_inward_decomposition_fills_inner_diamond():
    for t in enumerate_tilings(AztecDiamond(2)):
        d = decompose(field_from_inner_tiling(t))
        assert d.carrier == AztecDiamond(2)
        assert t in set(all_tilings_for_field(d.field))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_recursion_passes(n):
    report = verify_recursion(n)
    assert report.passed, report.to_text()
    assert [c.name for c in report.checks] == ["group_size", "node_balance", "flip_shift", "inner_sum", "recursion"]


def test_verify_recursion_n0():
    assert verify_recursion(0).passed


def test_verify_recursion_guard():
    with pytest.raises(GuardExceededError):
        verify_recursion(5)
    with pytest.raises(ValueError):
        verify_recursion(-1)


def test_recursion_report_json():
    data = json.loads(verify_recursion(1).dumps())
    assert data["n"] == 1
    assert all(set(c) == {"name", "pass", "detail"} for c in data["checks"])
    assert all(c["pass"] is True for c in data["checks"])


def test_worked_example(example_outward_field):
    f = example_outward_field
    g = flip(f)
    df, dg = decompose(f), decompose(g)
    assert df.free_choices == 4
    assert dg.free_choices == 1
    assert df.carrier == AztecDiamond(3) and dg.carrier == AztecDiamond(2)
    assert horizontal_component_count(df) == horizontal_component_count(dg) == 2
    assert len(list(all_tilings_for_field(f))) == 16
    assert len(list(all_tilings_for_field(g))) == 2


@pytest.mark.parametrize("n", range(0, 4))
def test_sigma_identities(n):
    outer = {field_from_outer_tiling(t) for t in enumerate_tilings(AztecDiamond(n + 1))}
    t_outer = sum(2 ** census(f).repelling for f in outer)
    t_inner = sum(2 ** census(flip(f)).repelling for f in outer)
    assert t_outer == 2 ** (n + 1) * t_inner
    assert t_inner == sum(1 for _ in enumerate_tilings(AztecDiamond(n)))


@pytest.mark.parametrize("n", range(0, 4))
def test_horizontal_component_count_is_flip_invariant(n):
    for f in {field_from_outer_tiling(t) for t in enumerate_tilings(AztecDiamond(n + 1))}:
        assert horizontal_component_count(decompose(f)) == horizontal_component_count(decompose(flip(f)))


def test_square_orientation_convention():
    sq = SquareComponent(Point(0, 0))
    f = field_from_outer_tiling(A1_H)
    d = decompose(f)
    assert d.squares == (sq,)
    assert {dd.orientation for dd in fill(d, [0]).dominoes} == {H}
    assert {dd.orientation for dd in fill(d, [1]).dominoes} == {V}


def test_domino_component_cells():
    c = DominoComponent(Domino(Cell(0, 0), H))
    assert c.cells == (Cell(0, 0), Cell(1, 0))


@given(order=st.sampled_from([3, 4]), seed=st.integers(0, 2**64 - 1))
@settings(max_examples=60, deadline=None)
def test_random_round_trip(order, seed):
    t = sample_uniform(SampleSpec(order, seed))
    f = field_from_outer_tiling(t)
    d = decompose(f)
    choice = choice_for_tiling(d, t)
    assert choice is not None and fill(d, choice) == t
    assert flip(flip(f)) == f
