import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import instance_and_choice, instances, seg
from segcover.core import (Interval, Pick, ScInstance, UncertainSegment, all_choices, decompose_cells, is_cover,
                           merge, uncovered_gaps, union_length)


def test_union_length_examples():
    assert union_length([]) == 0
    assert union_length([Interval(0, F(1, 2)), Interval(F(1, 4), F(3, 4))]) == F(3, 4)
    assert union_length([Interval(0, F(1, 3)), Interval(F(2, 3), 1)]) == F(2, 3)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        Interval(0.0, 1)


def test_reversed_interval_rejected():
    with pytest.raises(ValueError):
        Interval(1, 0)


def test_is_cover_examples(half_split):
    inst = ScInstance((seg(0, 1, 0, F(1, 2)),))
    assert is_cover(inst, (Pick.FIRST,))
    assert not is_cover(inst, (Pick.SECOND,))
    assert not is_cover(half_split, (Pick.FIRST,))
    assert not is_cover(half_split, (Pick.SECOND,))


def test_shared_endpoint_counts_as_covered():
    inst = ScInstance((seg(0, F(1, 2), 0, 0), seg(F(1, 2), 1, 0, 0)))
    assert is_cover(inst, (Pick.FIRST, Pick.FIRST))


def test_uncovered_gaps_examples():
    cover = ScInstance((seg(0, 1, 0, 1),))
    assert uncovered_gaps(cover, (Pick.FIRST,)) == []
    inst = ScInstance((seg(0, F(1, 2), 0, F(1, 2)),))
    assert uncovered_gaps(inst, (Pick.SECOND,)) == [Interval(F(1, 2), 1)]
    two = ScInstance((seg(0, F(1, 4), 0, 0), seg(F(3, 4), 1, 0, 0)))
    assert uncovered_gaps(two, (Pick.FIRST, Pick.FIRST)) == [Interval(F(1, 4), F(3, 4))]


def test_choice_length_checked(half_split):
    with pytest.raises(ValueError):
        is_cover(half_split, ())


def test_decompose_examples(half_split):
    d = decompose_cells(half_split)
    assert d.cells == (Interval(0, F(1, 2)), Interval(F(1, 2), 1))
    assert d.coverers == (frozenset({(0, Pick.FIRST)}), frozenset({(0, Pick.SECOND)}))

    empty = decompose_cells(ScInstance(()))
    assert empty.cells == (Interval(0, 1),) and empty.coverers == (frozenset(),)

    # endpoints 1/3 and 2/3 by hand
    inst = ScInstance((seg(0, F(2, 3), 0, 0), seg(0, 0, F(1, 3), 1)))
    d = decompose_cells(inst)
    assert [c for c in d.cells if not c.degenerate] == [Interval(0, F(1, 3)), Interval(F(1, 3), F(2, 3)),
                                                        Interval(F(2, 3), 1)]


def test_json_round_trip_is_exact():
    inst = ScInstance((seg(F(1, 3), F(2, 3), 0, F(7, 9), "a"),), Interval(0, 1))
    text = inst.dumps()
    assert ScInstance.loads(text) == inst
    assert json.loads(text)["segments"][0]["first"] == ["1/3", "2/3"]


def test_segment_outside_target_rejected():
    with pytest.raises(ValueError):
        ScInstance((seg(0, 2, 0, 1),))


def cell_sum_union(inst, choice):
    """Oracle: sum of the cell lengths touched by a chosen coverer."""
    d = decompose_cells(inst)
    picked = {(k, p) for k, p in enumerate(choice)}
    return sum((c.length for c, cov in zip(d.cells, d.coverers) if cov & picked), F(0))


@given(instance_and_choice())
def test_cover_gap_length_identity(ic):
    inst, choice = ic
    gaps = uncovered_gaps(inst, choice)
    assert is_cover(inst, choice) == (not gaps)
    assert union_length(inst.chosen(choice)) + sum((g.length for g in gaps), F(0)) == inst.target.length


@given(instance_and_choice())
def test_union_matches_cell_oracle(ic):
    inst, choice = ic
    assert union_length(inst.chosen(choice)) == cell_sum_union(inst, choice)


@given(instances())
def test_cells_partition_target(inst):
    d = decompose_cells(inst)
    assert sum((c.length for c in d.cells), F(0)) == inst.target.length
    assert all(a.hi == b.lo and a.lo < b.lo for a, b in zip(d.cells, d.cells[1:]))
    for c, cov in zip(d.cells, d.coverers):
        for k, s in enumerate(inst.segments):
            for p in Pick:
                assert ((k, p) in cov) == s.pick(p).contains(c)


@given(instances())
def test_merge_is_disjoint_and_sorted(inst):
    pieces = merge(iv for s in inst.segments for iv in (s.first, s.second))
    assert all(a.hi < b.lo for a, b in zip(pieces, pieces[1:]))


def test_all_choices_order():
    assert list(all_choices(2))[:2] == [(Pick.FIRST, Pick.FIRST), (Pick.FIRST, Pick.SECOND)]
    assert len(list(all_choices(3))) == 8
