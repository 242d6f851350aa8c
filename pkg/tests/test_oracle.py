import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from cayleyprime.cayley import cayley_digraph, cayley_graph, is_bihomogeneous, is_homogeneous
from cayleyprime.errors import CapExceededError
from cayleyprime.graph import complete_graph, cycle_graph, empty_graph, graph_from_edges
from cayleyprime.group import build_cyclic, build_dihedral, build_product
from cayleyprime.oracle import (
    asymmetric_connection_sets,
    brute_force_bihomogeneous_sets,
    brute_force_homogeneous_sets,
    brute_force_is_prime,
    closure_is_prime,
    oracle_is_prime,
    symmetric_connection_sets,
    sweep_generator_sets,
)

from strategies import digraphs, graphs


def test_undirected_examples():
    assert brute_force_homogeneous_sets(cycle_graph(5)).all_homogeneous_sets == ()
    assert brute_force_homogeneous_sets(cycle_graph(5)).is_prime
    assert brute_force_homogeneous_sets(cycle_graph(4)).all_homogeneous_sets == ({0, 2}, {1, 3})
    assert brute_force_homogeneous_sets(complete_graph(3)).all_homogeneous_sets == ({0, 1}, {0, 2}, {1, 2})


def test_directed_examples():
    tri = graph_from_edges(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert brute_force_bihomogeneous_sets(tri).is_prime
    z4 = cayley_digraph(build_cyclic(4), {1, 3})
    assert brute_force_bihomogeneous_sets(z4).all_homogeneous_sets == ({0, 2}, {1, 3})
    k3 = graph_from_edges(3, [(a, b) for a in range(3) for b in range(3) if a != b], directed=True)
    assert len(brute_force_bihomogeneous_sets(k3).all_homogeneous_sets) == 3


def test_caps():
    with pytest.raises(CapExceededError):
        brute_force_homogeneous_sets(empty_graph(21))
    with pytest.raises(CapExceededError):
        brute_force_bihomogeneous_sets(graph_from_edges(17, [], directed=True))
    with pytest.raises(CapExceededError):
        sweep_generator_sets(build_cyclic(17))


def test_first_only_stops_early():
    r = brute_force_homogeneous_sets(cycle_graph(4), first_only=True)
    assert not r.is_prime and not r.complete and r.all_homogeneous_sets == ({0, 2},)


def test_order_is_size_then_lex():
    sets = brute_force_homogeneous_sets(empty_graph(4)).all_homogeneous_sets
    keys = [(len(s), sorted(s)) for s in sets]
    assert keys == sorted(keys) and len(sets) == 2**4 - 4 - 2


def naive_sets(g):
    nxg = nx.from_numpy_array(g.adj)
    out = []
    for k in range(2, g.n):
        for h in itertools.combinations(range(g.n), k):
            hs = set(h)
            if all(len(hs & set(nxg[v])) in (0, k) for v in range(g.n) if v not in hs):
                out.append(frozenset(h))
    return out


@given(graphs(max_n=8))
def test_matches_naive_enumeration(g):
    r = brute_force_homogeneous_sets(g)
    assert list(r.all_homogeneous_sets) == naive_sets(g)
    assert r.is_prime == (not r.all_homogeneous_sets)
    assert all(is_homogeneous(g, h) for h in r.all_homogeneous_sets)


@given(digraphs(max_n=7))
def test_bihomogeneous_sets_pass_definition(d):
    r = brute_force_bihomogeneous_sets(d)
    assert r.is_prime == (not r.all_homogeneous_sets)
    assert all(is_bihomogeneous(d, h) for h in r.all_homogeneous_sets)
    count = sum(is_bihomogeneous(d, set(h)) for k in range(2, d.n) for h in itertools.combinations(range(d.n), k))
    assert count == len(r.all_homogeneous_sets)


@settings(max_examples=100)
@given(graphs(max_n=10))
def test_closure_oracle_agrees_with_enumeration(g):
    assert closure_is_prime(g) == brute_force_is_prime(g)


def test_oracle_above_enumeration_cap():
    # Paley graph on 29 vertices is prime; C12 · E2 (S = ±1 mod 12) is not
    sq = {x * x % 29 for x in range(1, 29)}
    g = cayley_graph(build_cyclic(29), sq)
    assert oracle_is_prime(g)
    assert not oracle_is_prime(cayley_graph(build_cyclic(24), {1, 11, 13, 23}))


@pytest.mark.parametrize("g", [build_cyclic(6), build_cyclic(8), build_dihedral(4)], ids=lambda g: g.name)
def test_exhaustive_sweeps(g):
    report = sweep_generator_sets(g)
    assert report.ok and report.cases == 2 ** len({frozenset({x, g.inv(x)}) for x in range(1, g.order)}) - 2


def test_sampled_sweep_is_deterministic():
    g = build_product(build_cyclic(2), build_cyclic(8))
    a = sweep_generator_sets(g, max_sets=40, seed=7)
    b = sweep_generator_sets(g, max_sets=40, seed=7)
    assert a.to_dict() == b.to_dict() and a.cases == 40 and a.ok


def test_connection_set_enumeration():
    g = build_cyclic(5)
    sym = list(symmetric_connection_sets(g))
    assert sorted(sorted(s) for s in sym) == [[1, 4], [2, 3]]
    asym = list(asymmetric_connection_sets(g))
    assert len(asym) == 2**4 - 1 - 3
    assert all(0 not in s for s in asym)
