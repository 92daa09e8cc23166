import pytest
from hypothesis import given, strategies as st

from segcover.cnf import (CnfFormula, Decided, DimacsError, Reducible, brute_force_sat, evaluate,
                          occurrence_profile, parse_dimacs, preprocess_for_reduction, satisfies,
                          validate_djpsy_form, write_dimacs)

XYZ = CnfFormula(3, ((1, 2, 3), (-1, -2, -3)))


def test_parse_examples():
    f = parse_dimacs("p cnf 1 1\n1 0")
    assert f.num_vars == 1 and f.clauses == ((1,),)
    assert parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0") == XYZ


@pytest.mark.parametrize("text", [
    "p cnf 1 1\n2 0",
    "p cnf 2 2\n1 2 0",
    "p cnf 2 1\n1 2",
    "p dnf 2 1\n1 0",
    "1 2 0",
])
def test_parse_errors(text):
    with pytest.raises(DimacsError):
        parse_dimacs(text)


def test_parse_comments_and_multiline_clauses():
    f = parse_dimacs("c hello\np cnf 3 2\n1 -2\n3 0 -1\n0\n")
    assert f.clauses == ((1, -2, 3), (-1,))


def test_empty_clause_round_trip():
    f = CnfFormula(1, ((),))
    assert parse_dimacs(write_dimacs(f)) == f


def test_eval_examples():
    assert evaluate(CnfFormula(1, ((1,),)), (True,)) == {1}
    assert evaluate(XYZ, (True, True, True)) == {1}
    assert evaluate(CnfFormula(0, ()), ()) == set()


def test_preprocess_examples():
    single = preprocess_for_reduction(CnfFormula(3, ((1, 2, 3),)))
    assert isinstance(single, Decided) and single.satisfiable and single.witness[0] is True

    kept = preprocess_for_reduction(XYZ)
    assert isinstance(kept, Reducible) and kept.formula == XYZ

    taut = preprocess_for_reduction(CnfFormula(2, ((1, -1, 2),)))
    assert isinstance(taut, Decided) and taut.satisfiable


def test_preprocess_iterates_pure_literals():
    # x4 is pure; removing its clause makes x3 pure, which then frees the rest.
    f = CnfFormula(4, ((1, 2, 3), (-1, -2, 3), (-3, 1, 4)))
    pre = preprocess_for_reduction(f)
    assert isinstance(pre, Decided) and satisfies(f, pre.witness)


def test_occurrence_profile_examples():
    prof = occurrence_profile(XYZ)
    assert [(prof.p(v), prof.n(v)) for v in (1, 2, 3)] == [(1, 1)] * 3
    dup = occurrence_profile(CnfFormula(2, ((1, 1, 2),)))
    assert dup.p(1) == 2
    empty = occurrence_profile(CnfFormula(2, ()))
    assert empty.total == 0


def test_djpsy_examples():
    ok = CnfFormula(4, ((1, 2, 3), (1, -2, 4), (-1, -3, -4)))
    assert validate_djpsy_form(ok).ok
    four = CnfFormula(4, ((1, 2, 3), (1, -2, 4), (-1, -3, -4), (1, -2, 3)))
    assert 1 in validate_djpsy_form(four).bad_variables
    short = CnfFormula(3, ((1, 2), (-1, -2, 3)))
    assert not validate_djpsy_form(short).ok


clauses3 = st.lists(st.tuples(*[st.integers(1, 4).flatmap(lambda v: st.sampled_from((v, -v)))] * 3),
                    min_size=0, max_size=6)


@given(clauses3)
def test_preprocess_preserves_satisfiability(cls):
    f = CnfFormula(4, tuple(cls))
    pre = preprocess_for_reduction(f)
    sat = brute_force_sat(f) is not None
    if isinstance(pre, Decided):
        assert pre.satisfiable == sat
        if sat:
            assert satisfies(f, pre.witness)
    else:
        assert (brute_force_sat(pre.formula) is not None) == sat
        prof = occurrence_profile(pre.formula)
        assert all(prof.p(v) and prof.n(v) for v in range(1, 5) if prof.p(v) + prof.n(v))
        witness = brute_force_sat(pre.formula)
        if witness is not None:
            assert satisfies(f, pre.lift(witness))


@given(clauses3)
def test_dimacs_round_trip(cls):
    f = CnfFormula(4, tuple(cls))
    assert parse_dimacs(write_dimacs(f, ["note"])) == f
