from itertools import permutations

import pytest

from planar4c.errors import EdgeNotOnCircuit, NotHamiltonian
from planar4c.graph import combine_polygons, find_separating_triangles
from planar4c.hamilton import (
    all_hamilton_circuits,
    circuit_edges,
    degenerate_polygon,
    find_hamilton_circuit,
    is_hamilton_circuit,
    rebuild,
    split_by_circuit,
)
from planar4c.instances import stacked, triangulation_corpus


def brute_circuits(T):
    """Circuits through 0 by permutation, one per direction pair."""
    out = set()
    for rest in permutations(range(1, T.v)):
        c = (0,) + rest
        if c[1] < c[-1] and is_hamilton_circuit(T, c):
            out.add(c)
    return out


def test_known_counts(k4, octa):
    assert len(list(all_hamilton_circuits(k4))) == 3
    assert len(list(all_hamilton_circuits(octa))) == 16


def test_circuit_enumeration_matches_permutations():
    for _, T in triangulation_corpus(7):
        assert set(all_hamilton_circuits(T)) == brute_circuits(T)


def test_separating_free_graphs_are_hamiltonian(corpus8):
    for _, T in corpus8:
        if not find_separating_triangles(T):
            c = find_hamilton_circuit(T)
            assert c is not None and is_hamilton_circuit(T, c)


def test_through_edge(octa):
    c = find_hamilton_circuit(octa, through=(1, 2))
    assert (1, 2) in circuit_edges(c) or (2, 1) in circuit_edges(c)
    assert find_hamilton_circuit(octa, through=(0, 5)) is None


@pytest.mark.parametrize("base", [None, (0, 1), (4, 0)])
def test_split_invariants(octa, base):
    c = [0, 1, 2, 5, 3, 4]
    sp = split_by_circuit(octa, c, base)
    assert sp.inner.perimeter == sp.outer.perimeter
    assert sp.inner.v_i == sp.outer.v_i == 0
    assert sp.inner.t + sp.outer.t == octa.t
    assert sorted(sp.inner.origin + sp.outer.origin) == list(range(octa.t))
    if base is not None:
        assert set(sp.base) == set(base)


def test_split_recombines():
    for _, T in triangulation_corpus(7):
        sp = split_by_circuit(T, find_hamilton_circuit(T))
        back = combine_polygons(sp.inner, sp.outer)
        assert back.v == T.v and back.t == T.t


def test_split_errors(octa):
    with pytest.raises(NotHamiltonian):
        split_by_circuit(octa, [0, 1, 2, 3, 4, 5])
    with pytest.raises(EdgeNotOnCircuit):
        split_by_circuit(octa, [0, 1, 2, 5, 3, 4], (0, 2))


def test_rebuild_ends_degenerate(corpus8):
    for _, T in corpus8:
        c = find_hamilton_circuit(T)
        if c is None:
            continue
        sp = split_by_circuit(T, c)
        states = rebuild(sp.outer, sp.inner)
        D = states[-1]
        assert (D.v_p, D.v_i, D.t) == (2, T.v - 2, T.t)
        assert [s.t for s in states] == list(range(sp.outer.t, T.t + 1))
        assert sorted(D.origin) == list(range(T.t))
        assert degenerate_polygon(sp).triangles == D.triangles


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_stacked_circuits_match_permutations(depth):
    T = stacked(depth)
    assert set(all_hamilton_circuits(T)) == brute_circuits(T)
