"""Shared hypothesis strategies."""

import numpy as np
from hypothesis import strategies as st

from cayleyprime.graph import Digraph, Graph
from cayleyprime.group import build_cyclic, build_dihedral, build_product


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    adj = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, 1)
    adj[iu] = bits
    return Graph(adj | adj.T)


@st.composite
def digraphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    adj = np.array(bits, dtype=bool).reshape(n, n)
    np.fill_diagonal(adj, False)
    return Digraph(adj)


def small_groups():
    return st.sampled_from(
        [build_cyclic(n) for n in range(1, 11)]
        + [build_dihedral(3), build_dihedral(4), build_dihedral(5), build_product(build_cyclic(2), build_cyclic(2))]
    )


@st.composite
def group_and_symmetric_set(draw):
    g = draw(small_groups())
    picks = draw(st.lists(st.integers(0, g.order - 1), max_size=g.order))
    s = {x for x in picks if x != g.identity}
    s |= {g.inv(x) for x in s}
    return g, frozenset(s)
