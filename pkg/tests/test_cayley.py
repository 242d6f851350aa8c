import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from cayleyprime.cayley import (
    DEGENERATE,
    NOT_PRIME,
    PRIME,
    HomogeneityReport,
    WreathDecomposition,
    cayley_digraph,
    cayley_graph,
    distinguishing_vertex,
    double_coset_criterion,
    find_nontrivial_homogeneous,
    homogeneous_closure_subgroup,
    is_bihomogeneous,
    is_homogeneous,
    maximal_homogeneous_containing,
    minimal_module,
    subgroup_criterion,
    wreath_decompose,
)
from cayleyprime.errors import HypothesisError, ValidationError
from cayleyprime.graph import (
    complete_graph,
    cycle_graph,
    empty_graph,
    graph_from_edges,
    verify_isomorphism,
    wreath_product,
)
from cayleyprime.group import build_cyclic, build_dihedral, build_product
from cayleyprime.oracle import brute_force_homogeneous_sets

from strategies import graphs, group_and_symmetric_set

Z4, Z5, Z6, Z8 = (build_cyclic(n) for n in (4, 5, 6, 8))
CHERRY = graph_from_edges(4, [(1, 2), (1, 3)])  # vertex 0 isolated; edges 1-2, 1-3


def test_cayley_small_cycles():
    assert cayley_graph(Z4, {1, 3}) == cycle_graph(4)
    assert cayley_graph(Z6, {1, 5}) == cycle_graph(6)
    assert cayley_graph(Z5, {1, 2, 3, 4}) == complete_graph(5)
    assert cayley_graph(Z5, {1, 4}).vertex_transitive


def test_cayley_graph_nonabelian_is_regular_and_left_invariant():
    d = build_dihedral(4)
    g = cayley_graph(d, {1, 2, 6})  # s, r, r^3
    assert g.is_regular() and g.degree(0) == 3
    for x, y in itertools.product(range(8), repeat=2):
        assert g.has_edge(x, y) == (d.mul(d.inv(x), y) in {1, 2, 6})


def test_cayley_digraphs():
    d3 = cayley_digraph(build_cyclic(3), {1})
    assert d3.edges() == [(0, 1), (1, 2), (2, 0)]
    d4 = cayley_digraph(Z4, {1, 3})
    assert np.array_equal(d4.adj, cycle_graph(4).adj)
    d5 = cayley_digraph(Z5, {1, 2})
    assert [d5.out_degree(v) for v in range(5)] == [2] * 5
    with pytest.raises(ValidationError):
        cayley_digraph(Z5, {0, 1})


def test_is_homogeneous_examples():
    assert is_homogeneous(CHERRY, {2, 3})
    c5 = cycle_graph(5)
    assert is_homogeneous(c5, range(5)) and is_homogeneous(c5, {3})
    assert not is_homogeneous(c5, {0, 1})
    assert distinguishing_vertex(c5, {0, 1}) == 2
    with pytest.raises(ValidationError):
        is_homogeneous(c5, [])


def test_is_bihomogeneous_examples():
    assert is_bihomogeneous(cayley_digraph(Z4, {1, 3}), {0, 2})
    tri = cayley_digraph(build_cyclic(3), {1})
    assert not is_bihomogeneous(tri, {0, 1})
    assert is_bihomogeneous(tri, {1})


def test_minimal_module_examples():
    assert minimal_module(cycle_graph(5), {0, 1}) == frozenset(range(5))
    assert minimal_module(CHERRY, {2, 3}) == {2, 3}
    assert minimal_module(cycle_graph(7), {4}) == {4}


def test_maximal_homogeneous_examples():
    assert maximal_homogeneous_containing(cycle_graph(4), 0) == {0, 2}
    assert maximal_homogeneous_containing(cycle_graph(5), 0) == {0}
    # C5 · E2: connected, anti-connected, not prime
    g = wreath_product(cycle_graph(5), empty_graph(2))
    assert maximal_homogeneous_containing(g, 0) == {0, 1}


def test_maximal_homogeneous_refuses_without_unique_maximum():
    # K_{2,2,2}: {0,1,3,4} and {0,2,3,5} are both maximal through 0
    g = cayley_graph(Z6, {1, 2, 4, 5})
    with pytest.raises(HypothesisError) as exc:
        maximal_homogeneous_containing(g, 0)
    assert exc.value.tag == "union-not-proper"
    assert minimal_module(g, {0, 3}) == {0, 3}


def test_find_nontrivial_homogeneous_examples():
    k4 = find_nontrivial_homogeneous(complete_graph(4))
    assert k4.verdict == NOT_PRIME and len(k4.witness) == 2
    assert find_nontrivial_homogeneous(cycle_graph(5)).is_prime
    c4 = find_nontrivial_homogeneous(cycle_graph(4))
    assert c4.witness == {0, 2}
    assert c4.to_dict() == {"verdict": "not-prime", "witness": [0, 2], "witness_kind": "generic"}


def test_report_requires_witness():
    with pytest.raises(ValueError):
        HomogeneityReport(NOT_PRIME)


def test_non_transitive_large_graph_refused():
    g = graph_from_edges(21, [(i, i + 1) for i in range(20)])
    with pytest.raises(HypothesisError) as exc:
        find_nontrivial_homogeneous(g)
    assert exc.value.tag == "not-vertex-transitive"


@given(graphs(max_n=8))
def test_generic_fallback_matches_oracle(g):
    report = find_nontrivial_homogeneous(g)
    oracle = brute_force_homogeneous_sets(g)
    assert report.is_prime == oracle.is_prime
    if not report.is_prime:
        assert is_homogeneous(g, report.witness) and 2 <= len(report.witness) < g.n


def test_wreath_decompose_examples():
    dec = wreath_decompose(cycle_graph(4))
    assert isinstance(dec, WreathDecomposition)
    assert dec.outer == complete_graph(2) and dec.inner == empty_graph(2)
    assert verify_isomorphism(dec.product(), cycle_graph(4), dec.iso)
    two_triangles = graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    dec = wreath_decompose(two_triangles)
    assert dec.case_tag == "disconnected"
    assert dec.outer == empty_graph(2) and dec.inner == complete_graph(3)
    assert wreath_decompose(cycle_graph(5)) == PRIME
    assert wreath_decompose(complete_graph(4)) == DEGENERATE
    assert wreath_decompose(empty_graph(3)) == DEGENERATE


def test_wreath_decompose_block_system_case():
    g = cayley_graph(build_cyclic(10), {1, 4, 6, 9})
    # C5 · E2 with blocks the cosets of {0, 5}
    dec = wreath_decompose(g)
    assert dec.case_tag == "block-system"
    assert dec.blocks[0] == {0, 5}
    assert verify_isomorphism(dec.product(), g, dec.iso)
    x = nx.Graph(dec.product().edges())
    assert nx.is_isomorphic(x, nx.Graph(g.edges()))


def test_wreath_decompose_non_transitive_small_graph_refused():
    # components of sizes 3 and 2 cannot form equal blocks
    with pytest.raises(HypothesisError):
        wreath_decompose(graph_from_edges(5, [(0, 1), (0, 2), (3, 4)]))


@given(group_and_symmetric_set())
def test_decomposition_round_trip(gs):
    g, s = gs
    cay = cayley_graph(g, s)
    dec = wreath_decompose(cay)
    oracle = brute_force_homogeneous_sets(cay)
    if isinstance(dec, WreathDecomposition):
        assert not oracle.is_prime
        assert dec.outer.n >= 2 and dec.inner.n >= 2
        assert verify_isomorphism(dec.product(), cay, dec.iso)
        sizes = {len(b) for b in dec.blocks}
        assert len(sizes) == 1 and cay.n % sizes.pop() == 0
        assert all(a == b or not a & b for a, b in itertools.combinations(dec.blocks, 2))
    elif dec == PRIME:
        assert oracle.is_prime
    else:
        assert cay.is_complete() or cay.is_cocomplete()


def test_subgroup_criterion_examples():
    assert subgroup_criterion(Z4, {1, 3}) == {0, 2}
    assert subgroup_criterion(Z6, {1, 5}) is None
    assert subgroup_criterion(Z6, {1, 2, 4, 5}) == {0, 3}
    with pytest.raises(HypothesisError) as exc:
        subgroup_criterion(Z6, set())
    assert exc.value.tag == "cocomplete"
    with pytest.raises(HypothesisError) as exc:
        subgroup_criterion(Z6, {1, 2, 3, 4, 5})
    assert exc.value.tag == "complete"


def test_double_coset_examples():
    assert double_coset_criterion(Z4, {1}) is None
    assert double_coset_criterion(Z8, {1, 3, 5, 7}) == {0, 2, 4, 6}
    with pytest.raises(HypothesisError):
        double_coset_criterion(Z4, {1, 2})  # S ∪ S^-1 = G minus identity
    with pytest.raises(ValidationError):
        double_coset_criterion(Z4, {0, 1})


@given(group_and_symmetric_set())
def test_double_coset_agrees_with_right_coset_for_symmetric_sets(gs):
    g, s = gs
    if not s or len(s) == g.order - 1:
        return
    assert double_coset_criterion(g, s) == subgroup_criterion(g, s)


def test_homogeneous_closure_subgroup():
    assert homogeneous_closure_subgroup(Z4, {1, 3}, {0}) == {0}
    assert homogeneous_closure_subgroup(Z4, {1, 3}, {0, 2}) == {0, 2}
    assert homogeneous_closure_subgroup(Z8, {1, 3, 5, 7}, {0, 4}) == {0, 4}
    with pytest.raises(ValidationError) as exc:
        homogeneous_closure_subgroup(Z5, {1, 4}, {0, 1})
    assert exc.value.witness is not None


@given(group_and_symmetric_set())
def test_closure_of_homogeneous_sets_through_identity(gs):
    g, s = gs
    cay = cayley_graph(g, s)
    if cay.n > 10:
        return
    for h in brute_force_homogeneous_sets(cay).all_homogeneous_sets:
        if g.identity in h:
            sub = homogeneous_closure_subgroup(g, s, h)
            assert h <= sub and is_homogeneous(cay, sub)


@given(graphs(max_n=8))
def test_overlapping_homogeneous_sets_have_homogeneous_union(g):
    sets = brute_force_homogeneous_sets(g).all_homogeneous_sets
    for a, b in itertools.combinations(sets, 2):
        if a & b:
            assert is_homogeneous(g, a | b)


def test_product_group_cayley_graph():
    g = build_product(build_cyclic(2), build_cyclic(2))
    cay = cayley_graph(g, {1, 2})  # C4 again
    assert nx.is_isomorphic(nx.Graph(cay.edges()), nx.cycle_graph(4))
