"""Unit tests for the enumeration oracle and statistics harness."""

import pytest

from tablegen import oracle
from tablegen.errors import InsufficientSamples, TooLarge


def test_enumerate_tables_desk_cases():
    ts = oracle.enumerate_tables([2, 2], [2, 2])
    assert ts == [
        ((0, 2), (2, 0)),
        ((1, 1), (1, 1)),
        ((2, 0), (0, 2)),
    ]
    assert len(oracle.enumerate_tables([2, 1], [2, 1])) == 2
    assert len(oracle.enumerate_tables([2, 2, 2], [2, 2, 2])) == 21
    assert len(oracle.enumerate_tables([2, 2, 2], [2, 2, 2], max_cell=1)) == 6
    assert oracle.enumerate_tables([3], [1, 1, 1]) == [((1, 1, 1),)]
    assert oracle.enumerate_tables([2], [1]) == []


def test_enumerate_tables_row_and_column_sums_hold():
    rows, cols = [3, 2, 1], [2, 2, 2]
    for t in oracle.enumerate_tables(rows, cols):
        assert [sum(r) for r in t] == rows
        assert [sum(t[i][j] for i in range(3)) for j in range(3)] == cols


def test_enumerate_tables_cap():
    with pytest.raises(TooLarge):
        oracle.enumerate_tables([4] * 6, [4] * 6, cap=10)


def test_enumerate_multigraphs_ground_truths():
    assert oracle.enumerate_multigraphs([2, 2]) == [((0, 2), (2, 0))]
    assert len(oracle.enumerate_multigraphs([1, 1, 1, 1])) == 3
    triangle = oracle.enumerate_multigraphs([2, 2, 2])
    assert triangle == [((0, 1, 1), (1, 0, 1), (1, 1, 0))]
    # degrees must be met exactly
    for m in oracle.enumerate_multigraphs([3, 2, 2, 1]):
        assert [sum(r) for r in m] == [3, 2, 2, 1]
        assert all(m[u][u] == 0 for u in range(4))


def test_profiles_and_census():
    assert oracle.table_profile(((2, 0), (0, 2)), 2) == (2,)
    assert oracle.table_profile(((1, 1), (1, 1)), 2) == (0,)
    assert oracle.table_profile(((3, 0), (0, 3)), 3) == (0, 2)
    assert oracle.total_multiplicity(((2, 0), (0, 2))) == 4
    assert oracle.profile_weight((2,)) == 4
    assert oracle.profile_weight((1, 2)) == 8
    assert oracle.profile_level((0, 1)) == 3
    assert oracle.profile_level((1, 1)) == 3
    assert oracle.profile_level((1, 0)) == 2
    assert oracle.profile_level((0, 0)) is None

    ts = oracle.enumerate_tables([2, 2, 2], [2, 2, 2])
    census = oracle.stratum_census(ts, 2, oracle.table_profile)
    assert census == {(0,): 6, (1,): 9, (3,): 6}

    mg = oracle.enumerate_multigraphs([2, 2])
    assert oracle.multigraph_profile(mg[0], 2) == (1,)
    assert oracle.multigraph_total_multiplicity(mg[0]) == 2


def test_chi_square_uniform_behaviour():
    # perfectly even counts give statistic zero, p-value one
    rep = oracle.chi_square_uniform({"a": 50, "b": 50}, 2)
    assert rep.statistic == 0
    assert rep.p_value == pytest.approx(1.0)
    assert rep.tv_distance == 0
    # grossly uneven counts are rejected hard
    rep = oracle.chi_square_uniform({"a": 100, "b": 0}, 2)
    assert rep.p_value < 1e-10
    assert rep.tv_distance == pytest.approx(0.5)
    assert "FAIL" in rep.line("skew")
    # unseen outcomes count as zeros
    rep = oracle.chi_square_uniform({"a": 30, "b": 30}, 3)
    assert rep.n_samples == 60
    assert rep.min_count == 0


def test_chi_square_guards():
    with pytest.raises(InsufficientSamples):
        oracle.chi_square_uniform({"a": 3}, 2)
    with pytest.raises(ValueError):
        oracle.chi_square_uniform({"a": 10, "b": 10, "c": 10}, 2)


def test_chi_square_fit():
    from fractions import Fraction

    probs = {"x": Fraction(3, 4), "y": Fraction(1, 4)}
    rep = oracle.chi_square_fit({"x": 75, "y": 25}, probs)
    assert rep.statistic == 0
    with pytest.raises(ValueError):
        oracle.chi_square_fit({"x": 75, "z": 25}, probs)
