import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import seg
from segcover.allequal import (AllEqualError, BcuInstance, assert_all_equal, bcu_from_allequal,
                               bcu_radius_for_selection, bcu_solve, layout_for, reduce_djpsy_to_allequal)
from segcover.cnf import CnfFormula, brute_force_sat, satisfies
from segcover.core import Pick, ScInstance, uncovered_gaps
from segcover.generate import djpsy_3cnf, random_allequal
from segcover.reduce3sat import choice_to_assignment, t_picks_leaving_out
from segcover.solver import LimitExceededError, solve_brute

SAMPLE = CnfFormula(3, ((1, 2, 3), (-1, -2, 3), (1, -2, -3)))


def test_output_is_all_equal():
    inst, _ = reduce_djpsy_to_allequal(SAMPLE)
    assert assert_all_equal(inst) == layout_for(3).length == F(1, 19)
    assert inst.target.hi == 1


def test_sample_equivalence():
    inst, cert = reduce_djpsy_to_allequal(SAMPLE)
    res = solve_brute(inst, limit=None)
    assert res.coverable == (brute_force_sat(SAMPLE) is not None)
    assert satisfies(SAMPLE, choice_to_assignment(cert, inst, res.witness))


def test_single_shifted_copy_leaves_delta_gap():
    inst, cert = reduce_djpsy_to_allequal(SAMPLE)
    lay = layout_for(3)
    g = next(g for g in cert.variable_gadgets if len(g.positive) == 2 or len(g.negative) == 2)
    slot = g.positive[0] if len(g.negative) == 2 else g.negative[0]
    inc = g.incident(slot)
    assert len(inc) == 2
    choice = [Pick.FIRST] * len(inst.segments)
    j, k = slot
    t = cert.clause_gadgets[j - 1].segments
    choice[t[0]], choice[t[1]] = t_picks_leaving_out(k)
    (k0, p0), (k1, p1) = inc
    choice[k0], choice[k1] = p0, p1.flipped()
    cell = lay.literal_cell(j, k)
    near = [gap for gap in uncovered_gaps(inst, choice) if gap.lo >= cell.lo - lay.delta and gap.hi <= cell.hi + lay.delta]
    assert [gap.length for gap in near] == [lay.delta]
    choice[k1] = p1
    assert not [gap for gap in uncovered_gaps(inst, choice) if cell.contains(gap)]


def test_rejects_wrong_form():
    with pytest.raises(AllEqualError):
        reduce_djpsy_to_allequal(CnfFormula(3, ((1, 2, 3), (1, -2, -3), (1, 2, -3), (-1, 2, 3))))
    with pytest.raises(AllEqualError):
        reduce_djpsy_to_allequal(CnfFormula(3, ((1, 2, 3), (1, -2, -3))))


def test_assert_all_equal_errors():
    with pytest.raises(AllEqualError):
        assert_all_equal(ScInstance((seg(0, F(1, 2), 0, F(1, 3)),)))
    with pytest.raises(AllEqualError):
        assert_all_equal(ScInstance(()))


def test_bcu_construction():
    bcu = bcu_from_allequal(ScInstance((seg(0, F(1, 2), F(1, 2), 1),)))
    assert bcu.r == F(1, 4)
    # Sentinels sit 2r and 3r beyond the extreme midpoints 1/4 and 3/4.
    assert bcu.regions == ((F(-1, 4), F(-1, 2)), (F(1, 4), F(3, 4)), (F(5, 4), F(3, 2)))
    pad = bcu_from_allequal(ScInstance((seg(0, 1, 0, 1),)))
    assert pad.regions[1] == (F(1, 2), F(1, 2))
    with pytest.raises(AllEqualError):
        bcu_from_allequal(ScInstance(()))


def test_radius_examples():
    assert bcu_radius_for_selection([F(0), F(1), F(3)]) == 1
    assert bcu_radius_for_selection([F(5)]) == 0
    assert bcu_radius_for_selection([F(0), F(1, 2), F(1)]) == F(1, 4)


def test_bcu_solve_by_hand():
    # Region {0, 10} between sentinels {-2, -3} and {12, 13}; 8 selections.
    bcu = BcuInstance(((F(-2), F(-3)), (F(0), F(10)), (F(12), F(13))), F(1))
    by_hand = min(bcu_radius_for_selection(p) for p in itertools.product(*bcu.regions))
    assert by_hand == 6
    radius, sel = bcu_solve(bcu)
    assert radius == by_hand
    assert bcu_radius_for_selection([r[b] for r, b in zip(bcu.regions, sel)]) == radius


def test_bcu_limit():
    bcu = BcuInstance(tuple((F(k), F(k + 1)) for k in range(30)), F(1))
    with pytest.raises(LimitExceededError):
        bcu_solve(bcu)


def test_bcu_on_reduction_output():
    inst, _ = reduce_djpsy_to_allequal(CnfFormula(3, ((1, 2, 3), (-1, -2, -3))))
    bcu = bcu_from_allequal(inst)
    assert len(bcu.regions) == len(inst.segments) + 2


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10 ** 6))
def test_bcu_agrees_with_cover(n, seed):
    inst = random_allequal(n, seed)
    bcu = bcu_from_allequal(inst)
    radius, sel = bcu_solve(bcu)
    assert radius >= bcu.r
    assert (radius == bcu.r) == solve_brute(inst).coverable
    brute = min(bcu_radius_for_selection(p) for p in itertools.product(*bcu.regions))
    assert radius == brute


@pytest.mark.parametrize("seed", range(4))
def test_generated_djpsy_equivalence(seed):
    f = djpsy_3cnf(3 + seed % 2, seed)
    inst, cert = reduce_djpsy_to_allequal(f)
    assert_all_equal(inst)
    res = solve_brute(inst, limit=None)
    assert res.coverable == (brute_force_sat(f) is not None)
