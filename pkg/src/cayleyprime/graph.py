"""Dense finite graphs and digraphs on vertices ``0..n-1``.

Both classes are immutable wrappers around a read-only boolean adjacency
matrix. A graph may also carry ``translations``: an ``(n, n)`` array whose
row ``v`` is an automorphism sending vertex 0 to ``v``. Cayley graphs get
them for free from left multiplication, and constructions that preserve
vertex-transitivity propagate them. Their presence is what the analysis
layer treats as a certificate of vertex-transitivity.

Product constructions label the pair ``(x, y)`` as ``x * |V(b)| + y``.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .config import ISOMORPHISM_SEARCH_MAX_VERTICES
from .errors import CapExceededError, ValidationError
from .kernels import MAX_MASK_BITS


def _normalize_translations(t, adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    t = np.asarray(t, dtype=np.int64)
    if t.shape != (n, n):
        raise ValidationError(f"translations must have shape ({n}, {n}), got {t.shape}")
    firsts = t[:, 0]
    if sorted(firsts.tolist()) != list(range(n)):
        raise ValidationError("translations must send vertex 0 to every vertex exactly once")
    t = t[np.argsort(firsts, kind="stable")]
    for row in t:
        if sorted(row.tolist()) != list(range(n)):
            raise ValidationError("translation rows must be permutations", witness=row.tolist())
        if not np.array_equal(adj[np.ix_(row, row)], adj):
            raise ValidationError("translation row is not an automorphism", witness=row.tolist())
    t.setflags(write=False)
    return t


class _Relation:
    __slots__ = ("_adj", "_translations", "_masks")
    _symmetric = False

    def __init__(self, adj, translations=None):
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValidationError("a graph needs at least one vertex")
        if a.diagonal().any():
            v = int(np.flatnonzero(a.diagonal())[0])
            raise ValidationError(f"self-loop at vertex {v}", witness=v)
        if self._symmetric and not np.array_equal(a, a.T):
            u, v = map(int, np.argwhere(a != a.T)[0])
            raise ValidationError(f"adjacency not symmetric at ({u}, {v})", witness=(u, v))
        a.setflags(write=False)
        self._adj = a
        self._translations = None if translations is None else _normalize_translations(translations, a)
        self._masks = None

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @property
    def translations(self):
        return self._translations

    @property
    def vertex_transitive(self) -> bool:
        """True when a transitive automorphism family is attached."""
        return self._translations is not None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def out_masks(self) -> np.ndarray:
        if self.n > MAX_MASK_BITS:
            raise CapExceededError(f"bitmask kernels support at most {MAX_MASK_BITS} vertices")
        if self._masks is None:
            weights = np.int64(1) << np.arange(self.n, dtype=np.int64)
            m = (self._adj.astype(np.int64) * weights).sum(axis=1).astype(np.int64)
            m.setflags(write=False)
            self._masks = m
        return self._masks

    def edge_count(self) -> int:
        """Arcs for digraphs, unordered edges for graphs."""
        total = int(self._adj.sum())
        return total // 2 if self._symmetric else total

    def __eq__(self, other):
        return type(other) is type(self) and np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((type(self).__name__, self.n, self._adj.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, edges={len(self.edges())})"


class Graph(_Relation):
    """Simple undirected graph."""

    __slots__ = ()
    _symmetric = True

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def degree(self, v: int) -> int:
        return int(self._adj[v].sum())

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self._adj[v]).tolist()

    def is_complete(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1) // 2

    def is_cocomplete(self) -> bool:
        return not self._adj.any()

    def is_regular(self) -> bool:
        d = self.degrees()
        return bool((d == d[0]).all())

    def masks(self) -> np.ndarray:
        return self.out_masks()


class Digraph(_Relation):
    """Simple digraph: irreflexive, not necessarily symmetric."""

    __slots__ = ("_in_masks",)

    def __init__(self, adj, translations=None):
        super().__init__(adj, translations)
        self._in_masks = None

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(self._adj)
        return list(zip(us.tolist(), vs.tolist()))

    def out_degree(self, v: int) -> int:
        return int(self._adj[v].sum())

    def in_degree(self, v: int) -> int:
        return int(self._adj[:, v].sum())

    def is_complete(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1)

    def is_cocomplete(self) -> bool:
        return not self._adj.any()

    def in_masks(self) -> np.ndarray:
        if self._in_masks is None:
            self._in_masks = Digraph(self._adj.T).out_masks()
        return self._in_masks


# -- builders ---------------------------------------------------------------


def graph_from_edges(n: int, edges: Iterable[Sequence[int]], directed: bool = False):
    a = np.zeros((n, n), dtype=bool)
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u}, {v}) out of range for n={n}", witness=(u, v))
        a[u, v] = True
        if not directed:
            a[v, u] = True
    return Digraph(a) if directed else Graph(a)


def complete_graph(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool), translations=_cyclic_rows(n))


def empty_graph(n: int) -> Graph:
    return Graph(np.zeros((n, n), dtype=bool), translations=_cyclic_rows(n))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("a cycle needs at least 3 vertices")
    return Graph(_circulant(n, [1, n - 1]), translations=_cyclic_rows(n))


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _cyclic_rows(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def _circulant(n: int, steps) -> np.ndarray:
    a = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for s in steps:
            if s % n:
                a[i, (i + s) % n] = True
    return a


# -- constructions ----------------------------------------------------------


def complement(g):
    """Edge ``uv`` (``u != v``) present exactly when absent from ``g``."""
    a = ~g.adj
    np.fill_diagonal(a, False)
    return type(g)(a, translations=g.translations)


def induced_subgraph(g, h: Iterable[int]):
    """Return ``(subgraph, host_vertices)`` with sub-vertex ``i`` = ``host_vertices[i]``."""
    verts = sorted(set(int(v) for v in h))
    if not verts:
        raise ValidationError("induced subgraph needs a nonempty vertex set")
    if verts[0] < 0 or verts[-1] >= g.n:
        raise ValidationError("vertex set out of range", witness=verts)
    return type(g)(g.adj[np.ix_(verts, verts)]), tuple(verts)


def underlying_undirected(d: Digraph) -> Graph:
    return Graph(d.adj | d.adj.T, translations=d.translations)


def connected_components(g) -> list[frozenset[int]]:
    """Classes ordered by their least vertex. Digraphs use the symmetrization."""
    a = g.adj | g.adj.T
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in np.flatnonzero(a[u] & ~seen).tolist():
                seen[w] = True
                comp.append(w)
                queue.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g) -> bool:
    return len(connected_components(g)) == 1


def is_anti_connected(g) -> bool:
    # single vertex counts as anti-connected (see README conventions)
    return is_connected(complement(g))


def wreath_product(a: Graph, b: Graph) -> Graph:
    """Lexicographic product: ``xx'`` adjacent in ``a``, or ``x = x'`` and ``yy'`` adjacent in ``b``."""
    adj = np.kron(a.adj, np.ones((b.n, b.n), dtype=bool)) | np.kron(np.eye(a.n, dtype=bool), b.adj)
    return Graph(adj, translations=_product_translations(a, b))


def tensor_product(a: Graph, b: Graph) -> Graph:
    """Pairs adjacent iff adjacent in both coordinates."""
    return Graph(np.kron(a.adj, b.adj), translations=_product_translations(a, b))


def _product_translations(a, b):
    if a.translations is None or b.translations is None:
        return None
    ta, tb = a.translations, b.translations
    rows = ta[:, None, :, None] * b.n + tb[None, :, None, :]
    return rows.reshape(a.n * b.n, a.n * b.n)


def joined_union(g: Graph, parts: Sequence[Graph]) -> Graph:
    """Disjoint union of ``parts`` with complete joins between adjacent part indices."""
    if len(parts) != g.n:
        raise ValidationError(f"need {g.n} parts, got {len(parts)}")
    sizes = [p.n for p in parts]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    adj = np.zeros((total, total), dtype=bool)
    for i, p in enumerate(parts):
        si = slice(offsets[i], offsets[i + 1])
        adj[si, si] = p.adj
        for j in range(g.n):
            if g.adj[i, j]:
                adj[si, offsets[j]:offsets[j + 1]] = True
    return Graph(adj)


# -- isomorphism ------------------------------------------------------------


def verify_isomorphism(a, b, m: Sequence[int]) -> bool:
    """True iff ``m`` (vertex of ``a`` -> vertex of ``b``) is a bijective edge-preserving map."""
    if a.n != b.n or len(m) != a.n:
        return False
    m = np.asarray(m, dtype=np.int64)
    if m.min() < 0 or m.max() >= b.n or len(set(m.tolist())) != a.n:
        return False
    return bool(np.array_equal(b.adj[np.ix_(m, m)], a.adj))


def find_isomorphism(a, b, max_vertices: int = ISOMORPHISM_SEARCH_MAX_VERTICES):
    """Backtracking search with degree pruning; returns a map or ``None``."""
    if a.n != b.n:
        return None
    if a.n > max_vertices:
        raise CapExceededError(f"isomorphism search capped at {max_vertices} vertices")
    if a.edge_count() != b.edge_count():
        return None
    da, db = a.adj.sum(axis=1), b.adj.sum(axis=1)
    ia, ib = a.adj.sum(axis=0), b.adj.sum(axis=0)
    if sorted(zip(da, ia)) != sorted(zip(db, ib)):
        return None
    order = sorted(range(a.n), key=lambda v: (-int(da[v]), v))
    m = [-1] * a.n
    used = [False] * b.n

    def extend(k):
        if k == a.n:
            return True
        u = order[k]
        for w in range(b.n):
            if used[w] or da[u] != db[w] or ia[u] != ib[w]:
                continue
            ok = True
            for j in range(k):
                x = order[j]
                if a.adj[u, x] != b.adj[w, m[x]] or a.adj[x, u] != b.adj[m[x], w]:
                    ok = False
                    break
            if ok:
                m[u], used[w] = w, True
                if extend(k + 1):
                    return True
                m[u], used[w] = -1, False
        return False

    return list(m) if extend(0) else None


# -- serialization ----------------------------------------------------------


def graph_to_dict(g) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_dict(data: dict, directed: bool = False):
    if not isinstance(data, dict) or "n" not in data:
        raise ValidationError("graph JSON needs field 'n'")
    return graph_from_edges(int(data["n"]), data.get("edges", []), directed=directed)


def graph_to_text(g) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str, directed: bool = False):
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValidationError("empty graph text")
    n = int(rows[0][0])
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise ValidationError(f"bad edge line: {' '.join(r)!r}")
        edges.append((int(r[0]), int(r[1])))
    return graph_from_edges(n, edges, directed=directed)


def load_graph(path: str, directed: bool = False):
    """Read ``.json`` or the plain edge-list text format."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return graph_from_dict(json.loads(text), directed=directed)
    return graph_from_text(text, directed=directed)
