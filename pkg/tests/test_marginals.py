"""Unit tests for marginal validation and graphicality tests."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tablegen import marginals
from tablegen.errors import Empty, UnequalSums


def test_validate_strips_zeros_and_maps_positions():
    m = marginals.validate([0, 2, 0, 3], [5, 0, 0])
    assert m.rows == (2, 3)
    assert m.cols == (5,)
    assert m.row_positions == (1, 3)
    assert m.col_positions == (0,)
    assert m.shape == (4, 3)
    assert m.total == 5
    assert m.delta == 5


def test_validate_errors():
    with pytest.raises(UnequalSums):
        marginals.validate([2, 2], [3])
    with pytest.raises(Empty):
        marginals.validate([], [1])
    with pytest.raises(Empty):
        marginals.validate([0, 0], [0])
    with pytest.raises(ValueError):
        marginals.validate([-1, 1], [0])
    with pytest.raises(TypeError):
        marginals.validate([1.5, 0.5], [2])


def test_inflate_roundtrip():
    m = marginals.validate([0, 2, 1], [1, 0, 2])
    out = m.inflate([[0, 2], [1, 0]])
    assert out == [[0, 0, 0], [0, 0, 2], [1, 0, 0]]


def test_degree_sequence():
    d = marginals.validate_degrees([2, 0, 3])
    assert d.degrees == (2, 3)
    assert d.positions == (0, 2)
    assert d.size == 3
    assert d.total == 5
    assert d.delta == 3
    with pytest.raises(Empty):
        marginals.validate_degrees([0])


def test_factorial_moments_small_cases():
    # degrees (3, 2): S_1 = 5, S_2 = 3*2 + 2*1 = 8, S_3 = 6
    assert marginals.factorial_moments([3, 2], 3) == [2, 5, 8, 6]
    # 2-regular with 4 vertices: S_2 = 4 * 2 = 8
    assert marginals.factorial_moments([2, 2, 2, 2], 2) == [4, 8, 8]


def test_falling_factorial():
    assert marginals.falling_factorial(5, 0) == 1
    assert marginals.falling_factorial(5, 2) == 20
    assert marginals.falling_factorial(2, 3) == 0


def _bigraphical_by_enumeration(rows, cols):
    """Oracle: try every 0/1 matrix."""
    n, m = len(rows), len(cols)
    for bits in itertools.product([0, 1], repeat=n * m):
        mat = [bits[i * m : (i + 1) * m] for i in range(n)]
        if all(sum(r) == rows[i] for i, r in enumerate(mat)) and all(
            sum(mat[i][j] for i in range(n)) == cols[j] for j in range(m)
        ):
            return True
    return False


def test_gale_ryser_against_enumeration():
    vecs = [
        v
        for n in range(1, 4)
        for v in itertools.product(range(4), repeat=n)
        if sum(v) > 0
    ]
    checked = 0
    for r in vecs:
        for c in vecs:
            if sum(r) != sum(c) or sum(r) > 6:
                continue
            assert marginals.is_bigraphical(r, c) == _bigraphical_by_enumeration(r, c), (r, c)
            checked += 1
    assert checked > 200


def _graphical_by_enumeration(degrees):
    """Oracle: try every simple graph on len(degrees) vertices."""
    n = len(degrees)
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product([0, 1], repeat=len(pairs)):
        deg = [0] * n
        for b, (u, v) in zip(bits, pairs):
            if b:
                deg[u] += 1
                deg[v] += 1
        if deg == list(degrees):
            return True
    return False


def test_erdos_gallai_against_enumeration():
    checked = 0
    for n in range(1, 5):
        for d in itertools.product(range(4), repeat=n):
            assert marginals.is_graphical(d) == _graphical_by_enumeration(d), d
            checked += 1
    assert checked > 300


def test_known_graphicality_cases():
    assert marginals.is_bigraphical([2, 2], [2, 2])
    assert marginals.is_bigraphical([2, 1], [2, 1])
    assert not marginals.is_bigraphical([4], [2, 2])
    assert marginals.is_graphical([1, 1, 1, 1])
    assert marginals.is_graphical([2, 2, 2])
    assert not marginals.is_graphical([2, 2])  # only multigraph: a double edge
    assert not marginals.is_graphical([3, 1])


def test_multigraph_feasibility():
    assert marginals.multigraph_feasible([2, 2])
    assert marginals.multigraph_feasible([1, 1, 1, 1])
    assert not marginals.multigraph_feasible([3, 1])  # vertex wants 3 of 2 partners
    assert not marginals.multigraph_feasible([1, 1, 1])  # odd total
    assert marginals.multigraph_feasible([0, 0])


@given(
    st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=6),
    st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=6),
)
@settings(max_examples=200, deadline=None)
def test_validate_accepts_iff_sums_match_and_mass(rows, cols):
    try:
        m = marginals.validate(rows, cols)
    except UnequalSums:
        assert sum(rows) != sum(cols)
        return
    except Empty:
        assert sum(rows) == 0 or sum(cols) == 0
        return
    assert sum(m.rows) == sum(m.cols) == sum(rows)
    assert all(v > 0 for v in m.rows + m.cols)
