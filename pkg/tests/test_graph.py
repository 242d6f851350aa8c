import json

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayleyprime.errors import CapExceededError, ValidationError
from cayleyprime.graph import (
    Digraph,
    Graph,
    complement,
    complete_graph,
    connected_components,
    cycle_graph,
    empty_graph,
    find_isomorphism,
    graph_from_dict,
    graph_from_edges,
    graph_from_text,
    graph_to_dict,
    graph_to_text,
    induced_subgraph,
    is_anti_connected,
    is_connected,
    joined_union,
    load_graph,
    path_graph,
    tensor_product,
    verify_isomorphism,
    wreath_product,
)

from strategies import graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_rejects_asymmetric_and_loops():
    with pytest.raises(ValidationError):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(ValidationError):
        Graph([[1, 0], [0, 0]])
    with pytest.raises(ValidationError):
        Graph(np.zeros((0, 0)))
    Digraph([[0, 1], [0, 0]])


def test_adjacency_is_read_only():
    g = cycle_graph(5)
    with pytest.raises(ValueError):
        g.adj[0, 1] = False


def test_translations_must_be_automorphisms():
    with pytest.raises(ValidationError):
        Graph(path_graph(3).adj, translations=[[0, 1, 2], [1, 2, 0], [2, 0, 1]])


def test_wreath_of_k2_and_e2_is_c4():
    w = wreath_product(complete_graph(2), empty_graph(2))
    assert nx.is_isomorphic(to_nx(w), nx.cycle_graph(4))
    assert w.vertex_transitive


def test_wreath_k3_e2_is_octahedron():
    w = wreath_product(complete_graph(3), empty_graph(2))
    assert nx.is_isomorphic(to_nx(w), nx.complete_multipartite_graph(2, 2, 2))


def test_tensor_k2_k2_disconnected():
    t = tensor_product(complete_graph(2), complete_graph(2))
    assert connected_components(t) == [frozenset({0, 3}), frozenset({1, 2})]


def test_joined_union_of_edge_is_full_join():
    j = joined_union(complete_graph(2), [empty_graph(2), empty_graph(3)])
    assert nx.is_isomorphic(to_nx(j), nx.complete_bipartite_graph(2, 3))
    with pytest.raises(ValidationError):
        joined_union(complete_graph(2), [empty_graph(1)])


def test_joined_union_with_equal_parts_is_wreath():
    g, h = cycle_graph(5), path_graph(3)
    assert joined_union(g, [h] * 5) == wreath_product(g, h)


def test_induced_subgraph_relabels_in_order():
    sub, verts = induced_subgraph(cycle_graph(6), {4, 0, 1})
    assert verts == (0, 1, 4)
    assert sub.edges() == [(0, 1)]
    with pytest.raises(ValidationError):
        induced_subgraph(cycle_graph(6), [])


def test_single_vertex_is_connected_and_anti_connected():
    g = empty_graph(1)
    assert is_connected(g) and is_anti_connected(g)


def test_c4_is_connected_not_anti_connected():
    assert is_connected(cycle_graph(4))
    assert not is_anti_connected(cycle_graph(4))
    assert is_anti_connected(cycle_graph(5))


@given(graphs(max_n=9))
def test_components_match_networkx(g):
    ours = sorted(map(sorted, connected_components(g)))
    theirs = sorted(map(sorted, nx.connected_components(to_nx(g))))
    assert ours == theirs


@given(graphs(max_n=8))
def test_complement_is_involution(g):
    assert complement(complement(g)) == g
    assert complement(g).edge_count() + g.edge_count() == g.n * (g.n - 1) // 2


@given(graphs(max_n=7), st.permutations(range(7)))
def test_find_isomorphism_recovers_relabelling(g, perm):
    perm = [p for p in perm if p < g.n]
    h = Graph(g.adj[np.ix_(np.argsort(perm), np.argsort(perm))])
    m = find_isomorphism(g, h)
    assert m is not None and verify_isomorphism(g, h, m)


@given(graphs(max_n=7), graphs(max_n=7))
def test_find_isomorphism_agrees_with_networkx(a, b):
    m = find_isomorphism(a, b)
    assert (m is not None) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_isomorphism_cap():
    with pytest.raises(CapExceededError):
        find_isomorphism(cycle_graph(11), cycle_graph(11))


def test_verify_isomorphism_rejects_non_bijection():
    assert not verify_isomorphism(cycle_graph(4), cycle_graph(4), [0, 0, 1, 2])
    assert verify_isomorphism(cycle_graph(4), cycle_graph(4), [1, 2, 3, 0])


def test_serialization_round_trips(tmp_path):
    g = cycle_graph(5)
    assert graph_from_dict(json.loads(json.dumps(graph_to_dict(g)))) == g
    assert graph_from_text(graph_to_text(g)) == g
    p = tmp_path / "g.json"
    p.write_text(json.dumps(graph_to_dict(g)))
    assert load_graph(str(p)) == g
    q = tmp_path / "g.txt"
    q.write_text("# five-cycle\n" + graph_to_text(g))
    assert load_graph(str(q)) == g


def test_edge_out_of_range():
    with pytest.raises(ValidationError) as exc:
        graph_from_edges(3, [(0, 3)])
    assert exc.value.witness == (0, 3)
