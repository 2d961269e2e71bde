import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pubdec import (
    CapExceeded,
    brute_force_axiom_check,
    brute_force_deviations,
    check_coh_jr,
    exists_satisfying_outcome,
    fixture,
)

from conftest import binary, small_instance


def test_brute_force_deviations_examples():
    assert brute_force_deviations(fixture("prop3"), (0, 0)) == {(frozenset({0}), frozenset({1}))}
    assert brute_force_deviations(fixture("example-1"), (1, 0)) == {(frozenset({1}), frozenset({0, 1}))}
    single = binary([[1, 0], [0, 1]], [[1, 0]])
    assert brute_force_deviations(single, (1, 0)) == frozenset()


def test_oracle_matches_checker_pair_fixture():
    inst = fixture("prop3")
    for w in inst.constraint:
        assert not brute_force_axiom_check(inst, w, "cohjr")
        assert not check_coh_jr(inst, w)


def test_oracle_unanimous():
    inst = binary([[1, 1, 0]] * 2, [[1, 1, 0], [0, 0, 0]])
    for axiom in ("cohjr", "cohejr", "cohejr-1", "agrejr"):
        assert brute_force_axiom_check(inst, (1, 1, 0), axiom)


def test_oracle_witness_shape():
    v = brute_force_axiom_check(fixture("prop3"), (0, 0), "cohjr")
    group, T, S = v.witness
    assert group == {0} and S == {1} and S <= T


def test_exists_examples():
    assert not exists_satisfying_outcome(fixture("prop3"), "cohjr").exists
    assert exists_satisfying_outcome(fixture("prop6-m8"), "cohejr-1", max_m=8).satisfying == ()
    rep = exists_satisfying_outcome(fixture("sec5-agr"), "agrejr")
    assert rep.satisfying == ((1, 1, 0, 0),)
    assert len(rep.verdicts) == 2


def test_exists_oracle_method_agrees():
    for name in ("prop3", "sec5-agr", "example-1", "sec6-price"):
        inst = fixture(name)
        for axiom in ("cohjr", "cohejr", "agrejr"):
            a = exists_satisfying_outcome(inst, axiom)
            b = exists_satisfying_outcome(inst, axiom, method="oracle")
            assert a.satisfying == b.satisfying


def test_caps():
    big = binary([[0] * 7], [[0] * 7])
    with pytest.raises(CapExceeded):
        brute_force_deviations(big, (0,) * 7)
    many = binary([[0, 0]] * 9, [[0, 0]])
    with pytest.raises(CapExceeded):
        brute_force_axiom_check(many, (0, 0), "cohjr")
    with pytest.raises(ValueError):
        exists_satisfying_outcome(fixture("prop3"), "cohjr", method="guess")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_existence_monotone_in_strength(seed):
    inst = small_instance(seed)
    strong = set(exists_satisfying_outcome(inst, "cohejr").satisfying)
    weak = set(exists_satisfying_outcome(inst, "cohejr-1").satisfying)
    assert strong <= weak
    report = exists_satisfying_outcome(inst, "cohjr")
    assert [w for w, _ in report.verdicts] == list(inst.constraint)
