import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kroman.errors import MalformedLabelingError, ParameterDomainError
from kroman.grid import Grid
from kroman.verify import Labeling, check, is_valid, slack_array

from conftest import naive_valid


@st.composite
def labelings(draw, max_m=7, max_n=5):
    m = draw(st.integers(3, max_m))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(st.integers(0, k + 1), min_size=m, max_size=m), min_size=n, max_size=n))
    return m, n, k, rows


@settings(max_examples=400)
@given(labelings())
def test_matches_definition(case):
    m, n, k, rows = case
    L = Labeling(Grid(m, n), k, np.array(rows))
    expected = naive_valid(m, n, k, rows)
    assert is_valid(L) == expected
    assert check(L).valid == expected
    assert L.weight == sum(map(sum, rows))


@given(labelings())
def test_violations_are_exactly_the_failing_vertices(case):
    m, n, k, rows = case
    L = Labeling(Grid(m, n), k, np.array(rows))
    rep = check(L)
    for v in rep.violations:
        assert L[v.vertex] < k
        assert v.achieved < v.required
        # raising the violated vertex to k always repairs it locally
        fixed = [list(r) for r in rows]
        fixed[v.vertex.j][v.vertex.i] = k
        assert not any(w.vertex == v.vertex for w in check(Labeling(Grid(m, n), k, np.array(fixed))).violations)


@given(labelings())
def test_raising_a_label_to_k_plus_one_keeps_validity(case):
    m, n, k, rows = case
    L = Labeling(Grid(m, n), k, np.array(rows))
    if not is_valid(L):
        return
    for j in range(n):
        for i in range(m):
            if rows[j][i] == 0:
                up = [list(r) for r in rows]
                up[j][i] = k + 1
                assert is_valid(Labeling(Grid(m, n), k, np.array(up)))
                return


def test_all_zero_has_one_violation_per_vertex():
    L = Labeling.zeros(Grid(5, 8), 2)
    rep = check(L)
    assert not rep.valid
    assert len(rep.violations) == 40
    assert rep.weight == 0
    assert rep.min_slack == -2


def test_all_k_is_unconstrained():
    L = Labeling.constant(Grid(4, 3), 3, 3)
    rep = check(L)
    assert rep.valid and rep.min_slack is None
    assert rep.to_dict()["min_slack"] == "unconstrained"


def test_slack_array_sign():
    L = Labeling.constant(Grid(3, 4), 1, 1)
    # a label 1 vertex with k = 1 is unconstrained; slack is still reported
    assert slack_array(L).shape == (4, 3)
    assert check(L).valid


def test_label_range_enforced():
    with pytest.raises(MalformedLabelingError):
        Labeling(Grid(3, 1), 2, np.array([[0, 4, 0]]))
    with pytest.raises(MalformedLabelingError):
        Labeling(Grid(3, 1), 2, np.array([[0, -1, 0]]))
    with pytest.raises(MalformedLabelingError):
        Labeling(Grid(3, 2), 2, np.zeros((3, 2)))
    with pytest.raises(ParameterDomainError):
        Labeling(Grid(3, 1), 0, np.zeros((1, 3)))


def test_json_round_trip():
    L = Labeling(Grid(3, 2), 2, np.array([[3, 0, 0], [0, 2, 1]]))
    again = Labeling.from_json(L.to_json())
    assert again == L
    assert hash(again) == hash(L)
    assert json.loads(L.to_json())["labels"] == [[3, 0, 0], [0, 2, 1]]


@pytest.mark.parametrize(
    "text",
    [
        '{"m": 3, "n": 1, "k": 2, "labels": [[0, 0, 0]',
        '{"m": 3, "n": 1, "k": 2}',
        '{"m": 3, "n": 2, "k": 2, "labels": [[0, 0, 0]]}',
        '{"m": 3, "n": 1, "k": 2, "labels": [[0, 0]]}',
        '{"m": 3, "n": 1, "k": 2, "labels": [[0, 0.5, 0]]}',
        '{"m": 3, "n": 1, "k": true, "labels": [[0, 0, 0]]}',
        '[1, 2, 3]',
    ],
)
def test_malformed_json(text):
    with pytest.raises(MalformedLabelingError):
        Labeling.from_json(text)


def test_vertex_lookup():
    L = Labeling(Grid(3, 2), 2, np.array([[3, 0, 0], [0, 2, 1]]))
    assert L[(0, 0)] == 3 and L[(1, 1)] == 2
    with pytest.raises(ParameterDomainError):
        L[(3, 0)]
