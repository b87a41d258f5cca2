import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kroman.errors import ParameterDomainError
from kroman.grid import Grid, Vertex

grids = st.builds(Grid, st.integers(3, 12), st.integers(1, 8))


def test_rejects_degenerate_sizes():
    for m, n in [(2, 4), (0, 1), (5, 0), (-3, 3)]:
        with pytest.raises(ParameterDomainError):
            Grid(m, n)
    with pytest.raises(ParameterDomainError):
        Grid(4.5, 3)


def test_fibre_major_indexing():
    g = Grid(5, 3)
    assert [g.index(v) for v in g.fibre(1)] == list(range(5, 10))
    assert g.vertex(7) == Vertex(2, 1)
    with pytest.raises(ParameterDomainError):
        g.vertex(15)
    with pytest.raises(ParameterDomainError):
        g.index((5, 0))


def test_degrees():
    g = Grid(6, 4)
    for v in g.vertices():
        deg = len(g.open_neighborhood(v))
        assert deg == (3 if v.j in (0, 3) else 4)
    # a single fibre is just the cycle
    assert all(len(Grid(7, 1).open_neighborhood(v)) == 2 for v in Grid(7, 1).vertices())


def test_closed_neighborhood_contains_vertex():
    g = Grid(3, 2)
    assert g.closed_neighborhood((0, 0)) == {(0, 0), (1, 0), (2, 0), (0, 1)}


@given(grids, st.data())
def test_adjacency_is_symmetric(g, data):
    idx = data.draw(st.integers(0, g.size - 1))
    v = g.vertex(idx)
    for u in g.open_neighborhood(v):
        assert v in g.open_neighborhood(u)
        assert g.distance(u, v) == 1


@given(grids)
def test_tables_agree_with_sets(g):
    for v in g.vertices():
        p = g.index(v)
        assert set(g.neighbor_table[p]) == {g.index(u) for u in g.open_neighborhood(v)}
        # distance <= 2 means the closed neighbourhoods meet
        meet = {
            g.index(u)
            for u in g.vertices()
            if u != v and g.closed_neighborhood(u) & g.closed_neighborhood(v)
        }
        assert g.square_table[p] == meet


def test_square_adjacent_small_cycle():
    # on C_4 every pair in one fibre is within distance 2
    g = Grid(4, 3)
    for a, b in itertools.combinations(g.fibre(1), 2):
        assert g.square_adjacent(a, b)
    assert g.square_adjacent((0, 0), (0, 2))
    assert not g.square_adjacent((0, 0), (2, 1))
    with pytest.raises(ParameterDomainError):
        g.square_adjacent((1, 1), (1, 1))
