"""Homogeneous sets, primality and wreath decompositions of Cayley graphs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import kernels
from .config import GENERIC_FALLBACK_MAX_VERTICES
from .errors import CayleyError, HypothesisError, ValidationError
from .graph import (
    Digraph,
    Graph,
    complement,
    connected_components,
    find_isomorphism,
    induced_subgraph,
    verify_isomorphism,
    wreath_product,
)
from .group import (
    FiniteGroup,
    double_coset,
    enumerate_subgroups,
    inverse_set,
    lex_key,
    right_coset,
    subgroup_generated,
    validate_generator_set,
)

PRIME = "prime"
NOT_PRIME = "not-prime"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class HomogeneityReport:
    verdict: str
    witness: frozenset[int] | None = None
    witness_kind: str | None = None

    def __post_init__(self):
        if self.verdict == NOT_PRIME and self.witness is None:
            raise ValueError("not-prime report needs a witness")

    @property
    def is_prime(self) -> bool:
        return self.verdict == PRIME

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = lex_key(self.witness)
            out["witness_kind"] = self.witness_kind
        return out


@dataclass(frozen=True)
class WreathDecomposition:
    """``iso[x * |inner| + y]`` is the input vertex that the pair ``(x, y)`` maps to."""

    outer: Graph
    inner: Graph
    iso: tuple[int, ...]
    case_tag: str
    blocks: tuple[frozenset[int], ...]

    def product(self) -> Graph:
        return wreath_product(self.outer, self.inner)

    def to_dict(self) -> dict:
        from .graph import graph_to_dict

        return {
            "outer": graph_to_dict(self.outer),
            "inner": graph_to_dict(self.inner),
            "iso": list(self.iso),
            "case": self.case_tag,
        }


# -- Cayley constructions ---------------------------------------------------


def _membership(n: int, s: Iterable[int]) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    m[list(s)] = True
    return m


def cayley_graph(g: FiniteGroup, s: Iterable[int]) -> Graph:
    """``x ~ y`` iff ``x^-1 y`` lies in ``s``; left translations ride along."""
    s = validate_generator_set(g, s)
    adj = _membership(g.order, s)[g.table[g.inverse]]
    return Graph(adj, translations=g.table)


def cayley_digraph(g: FiniteGroup, s: Iterable[int]) -> Digraph:
    """Arc ``x -> y`` iff ``x^-1 y`` lies in ``s``. Inversion closure not required."""
    s = frozenset(int(x) for x in s)
    for x in sorted(s):
        if not 0 <= x < g.order:
            raise ValidationError(f"{x} is not an element of {g.name}", witness=x)
    if g.identity in s:
        raise ValidationError("connection set contains the identity", witness=g.identity)
    adj = _membership(g.order, s)[g.table[g.inverse]]
    return Digraph(adj, translations=g.table)


# -- homogeneity ------------------------------------------------------------


def _as_mask(n: int, x: Iterable[int]) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    members = list(x)
    if not members:
        raise ValidationError("vertex set must be nonempty")
    m[members] = True
    return m


def distinguishing_vertex(g, x: Iterable[int]) -> int | None:
    """First vertex outside ``x`` adjacent to some but not all of ``x``."""
    inx = _as_mask(g.n, x)
    cnt = g.adj[:, inx].sum(axis=1)
    bad = ~inx & (cnt > 0) & (cnt < inx.sum())
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def is_homogeneous(g: Graph, x: Iterable[int]) -> bool:
    return distinguishing_vertex(g, x) is None


def is_bihomogeneous(d: Digraph, x: Iterable[int]) -> bool:
    """In- and out-homogeneous: outsiders send arcs to all or none of ``x``, and receive from all or none."""
    inx = _as_mask(d.n, x)
    k = inx.sum()
    outs = d.adj[:, inx].sum(axis=1)
    ins = d.adj[inx, :].sum(axis=0)
    bad = ~inx & (((outs > 0) & (outs < k)) | ((ins > 0) & (ins < k)))
    return not bad.any()


def minimal_module(g: Graph, seed: Iterable[int]) -> frozenset[int]:
    """Smallest homogeneous set containing ``seed`` (splitter closure)."""
    closed = kernels.module_closure(np.ascontiguousarray(g.adj), _as_mask(g.n, seed))
    return frozenset(np.flatnonzero(closed).tolist())


def _proper_pair_closures(g: Graph, v: int) -> list[frozenset[int]]:
    rows = kernels.pair_closures(np.ascontiguousarray(g.adj), v)
    out = []
    for u in range(g.n):
        if u != v and not rows[u].all():
            out.append(frozenset(np.flatnonzero(rows[u]).tolist()))
    return out


def maximal_homogeneous_containing(g: Graph, v: int) -> frozenset[int]:
    """Union of every proper pair-closure ``minimal_module({v, u})``.

    Equals the unique maximal proper homogeneous set through ``v`` when ``g``
    is vertex-transitive, connected and anti-connected; ``{v}`` if prime.
    """
    acc = {v}
    for m in _proper_pair_closures(g, v):
        acc |= m
    if len(acc) == g.n and g.n > 1:
        raise HypothesisError(
            "proper pair closures cover the whole graph; no unique maximal homogeneous set",
            tag="union-not-proper",
        )
    return frozenset(acc)


def find_nontrivial_homogeneous(g: Graph) -> HomogeneityReport:
    if g.n <= 2:
        return HomogeneityReport(PRIME)
    if g.vertex_transitive:
        for comps in (connected_components(g), connected_components(complement(g))):
            if len(comps) > 1:
                c = comps[0]
                # singleton classes only happen for complete/cocomplete graphs
                witness = c if len(c) >= 2 else frozenset({0, 1})
                return HomogeneityReport(NOT_PRIME, witness, "generic")
        # transitivity makes vertex 0 representative
        h = maximal_homogeneous_containing(g, 0)
        if len(h) >= 2:
            return HomogeneityReport(NOT_PRIME, h, "generic")
        return HomogeneityReport(PRIME)
    if g.n > GENERIC_FALLBACK_MAX_VERTICES:
        raise HypothesisError(
            f"graphs above {GENERIC_FALLBACK_MAX_VERTICES} vertices need a vertex-transitivity certificate",
            tag="not-vertex-transitive",
        )
    candidates = []
    for v in range(g.n):
        candidates.extend(m for m in _proper_pair_closures(g, v))
    if not candidates:
        return HomogeneityReport(PRIME)
    return HomogeneityReport(NOT_PRIME, min(candidates, key=lex_key), "generic")


# -- wreath decomposition ---------------------------------------------------


def wreath_decompose(g: Graph):
    """Return a :class:`WreathDecomposition`, ``"prime"`` or ``"degenerate"``.

    Blocks come from the connected components, the complement's components,
    or the translates of the maximal homogeneous set through vertex 0.
    Raises :class:`HypothesisError` when the input is not vertex-transitive.
    """
    if g.is_complete() or g.is_cocomplete():
        return DEGENERATE
    if not g.vertex_transitive and g.n > GENERIC_FALLBACK_MAX_VERTICES:
        raise HypothesisError("wreath decomposition needs a vertex-transitive input", tag="not-vertex-transitive")

    comps = connected_components(g)
    if len(comps) > 1:
        return _assemble(g, comps, "disconnected")
    anti = connected_components(complement(g))
    if len(anti) > 1:
        return _assemble(g, anti, "anti-disconnected")

    if find_nontrivial_homogeneous(g).is_prime:
        return PRIME
    if g.vertex_transitive:
        h = maximal_homogeneous_containing(g, 0)
        t = g.translations
        blocks = {frozenset(t[v][sorted(h)].tolist()) for v in range(g.n)}
    else:
        blocks = {maximal_homogeneous_containing(g, v) for v in range(g.n)}
    return _assemble(g, blocks, "block-system")


def _refuse(msg: str):
    raise HypothesisError(msg, tag="not-vertex-transitive")


def _assemble(g: Graph, blocks, case_tag: str) -> WreathDecomposition:
    blocks = sorted(blocks, key=min)
    seen = set()
    for b in blocks:
        if seen & b:
            _refuse("blocks overlap without coinciding")
        seen |= b
    sizes = {len(b) for b in blocks}
    if len(seen) != g.n or len(sizes) != 1 or len(blocks) < 2 or min(sizes) < 2:
        _refuse("block system is not a partition into equal non-trivial blocks")
    base = sorted(blocks[0])
    inner, _ = induced_subgraph(g, base)
    reps = [min(b) for b in blocks]
    outer_adj = g.adj[np.ix_(reps, reps)]
    outer = Graph(outer_adj)

    iso = []
    for rep, block in zip(reps, blocks):
        if g.translations is not None:
            sigma = g.translations[rep][base].tolist()
            if set(sigma) != block:
                _refuse("translate of the base block is not a block")
        else:
            sub, verts = induced_subgraph(g, block)
            m = find_isomorphism(inner, sub)
            if m is None:
                _refuse("blocks induce non-isomorphic subgraphs")
            sigma = [verts[i] for i in m]
        iso.extend(sigma)

    dec = WreathDecomposition(outer, inner, tuple(iso), case_tag, tuple(blocks))
    if not verify_isomorphism(dec.product(), g, dec.iso):
        _refuse("assembled map is not an isomorphism")
    return dec


# -- group-theoretic criteria -----------------------------------------------


@lru_cache(maxsize=64)
def _nontrivial_subgroups(g: FiniteGroup) -> tuple[frozenset[int], ...]:
    subs = [h for h in enumerate_subgroups(g) if 1 < len(h) < g.order]
    return tuple(sorted(subs, key=lex_key))


def subgroup_criterion(g: FiniteGroup, s: Iterable[int]) -> frozenset[int] | None:
    """Least subgroup ``{1} < H < G`` with ``Hc`` inside ``s`` for every ``c`` in ``s \\ H``."""
    s = validate_generator_set(g, s)
    if not s:
        raise HypothesisError("empty connection set gives a cocomplete graph", tag="cocomplete")
    if len(s) == g.order - 1:
        raise HypothesisError("full connection set gives a complete graph", tag="complete")
    for h in _nontrivial_subgroups(g):
        if all(right_coset(g, h, c) <= s for c in s - h):
            return h
    return None


def double_coset_criterion(g: FiniteGroup, s: Iterable[int]) -> frozenset[int] | None:
    """Least subgroup ``{1} < H < G`` with ``HcH`` inside ``s`` for every ``c`` in ``s \\ H``."""
    s = frozenset(int(x) for x in s)
    if g.identity in s:
        raise ValidationError("connection set contains the identity", witness=g.identity)
    if not s:
        raise HypothesisError("empty connection set", tag="cocomplete")
    if len(s | inverse_set(g, s)) == g.order - 1:
        raise HypothesisError("s together with its inverses covers G minus the identity", tag="complete")
    for h in _nontrivial_subgroups(g):
        if all(double_coset(g, h, c) <= s for c in s - h):
            return h
    return None


def homogeneous_closure_subgroup(g: FiniteGroup, s: Iterable[int], h: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by a homogeneous set ``h`` containing the identity; itself homogeneous."""
    h = frozenset(int(x) for x in h)
    if g.identity not in h:
        raise ValidationError("set must contain the identity", witness=g.identity)
    cay = cayley_graph(g, s)
    w = distinguishing_vertex(cay, h)
    if w is not None:
        raise ValidationError(f"set is not homogeneous: vertex {w} distinguishes it", witness=w)
    sub = subgroup_generated(g, h)
    if not is_homogeneous(cay, sub):
        raise CayleyError(f"generated subgroup {lex_key(sub)} is not homogeneous")
    return sub
