"""Brute-force reference answers for homogeneity questions."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import kernels
from .cayley import cayley_graph, subgroup_criterion
from .config import ORACLE_MAX_DIGRAPH_VERTICES, ORACLE_MAX_VERTICES, SWEEP_MAX_ORDER
from .errors import CapExceededError
from .group import FiniteGroup, lex_key


@dataclass(frozen=True)
class OracleReport:
    all_homogeneous_sets: tuple[frozenset[int], ...]
    is_prime: bool
    elapsed: float
    complete: bool = True  # False when the search stopped at the first witness


def _mask_members(mask: int) -> frozenset[int]:
    out, v = [], 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _order(sets) -> tuple[frozenset[int], ...]:
    return tuple(sorted(sets, key=lambda s: (len(s), lex_key(s))))


def brute_force_homogeneous_sets(g, first_only: bool = False) -> OracleReport:
    """Every vertex set of size ``2..n-1`` checked directly against the definition."""
    if g.n > ORACLE_MAX_VERTICES:
        raise CapExceededError(f"oracle capped at {ORACLE_MAX_VERTICES} vertices, got {g.n}")
    t0 = time.perf_counter()
    masks = kernels.homogeneous_masks(g.out_masks(), g.n, first_only)
    sets = _order(_mask_members(int(m)) for m in masks)
    return OracleReport(sets, not sets, time.perf_counter() - t0, complete=not first_only)


def brute_force_bihomogeneous_sets(d, first_only: bool = False) -> OracleReport:
    """Every vertex set of size ``2..n-1`` that is both in- and out-homogeneous."""
    if d.n > ORACLE_MAX_DIGRAPH_VERTICES:
        raise CapExceededError(f"directed oracle capped at {ORACLE_MAX_DIGRAPH_VERTICES} vertices, got {d.n}")
    t0 = time.perf_counter()
    in_masks = d.in_masks() if hasattr(d, "in_masks") else d.out_masks()
    masks = kernels.bihomogeneous_masks(d.out_masks(), in_masks, d.n, first_only)
    sets = _order(_mask_members(int(m)) for m in masks)
    return OracleReport(sets, not sets, time.perf_counter() - t0, complete=not first_only)


def brute_force_is_prime(g) -> bool:
    return brute_force_homogeneous_sets(g, first_only=True).is_prime


def closure_is_prime(g) -> bool:
    """Prime iff every pair closure is the whole vertex set.

    Any non-trivial homogeneous set contains a pair whose closure it
    contains, so this is exact; it scales to graphs the subset search cannot.
    """
    if g.n <= 2:
        return True
    adj = np.ascontiguousarray(g.adj)
    for v in range(g.n - 1):
        rows = kernels.pair_closures(adj, v)
        if not rows[v + 1 :].all():
            return False
    return True


def oracle_is_prime(g) -> bool:
    """Subset enumeration up to the oracle cap, exhaustive pair closures above it."""
    if g.n <= ORACLE_MAX_VERTICES:
        return brute_force_is_prime(g)
    return closure_is_prime(g)


# -- connection-set enumeration -------------------------------------------------


def _inverse_classes(g: FiniteGroup) -> list[frozenset[int]]:
    seen, out = set(), []
    for x in g.elements():
        if x == g.identity or x in seen:
            continue
        c = frozenset({x, g.inv(x)})
        seen |= c
        out.append(c)
    return out


def symmetric_connection_sets(g: FiniteGroup, proper: bool = True) -> Iterator[frozenset[int]]:
    """Inverse-closed identity-free sets; ``proper`` drops the empty and the full set."""
    classes = _inverse_classes(g)
    k = len(classes)
    for mask in range(1 << k):
        if proper and mask in (0, (1 << k) - 1):
            continue
        yield frozenset().union(*(classes[i] for i in range(k) if mask >> i & 1))


def asymmetric_connection_sets(g: FiniteGroup) -> Iterator[frozenset[int]]:
    """Identity-free sets that are not closed under inversion."""
    others = [x for x in g.elements() if x != g.identity]
    for mask in range(1, 1 << len(others)):
        s = frozenset(others[i] for i in range(len(others)) if mask >> i & 1)
        if any(g.inv(x) not in s for x in s):
            yield s


# -- sweep ----------------------------------------------------------------------


@dataclass
class SweepReport:
    group: str
    cases: int = 0
    disagreements: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict:
        return {"group": self.group, "cases": self.cases, "disagreements": self.disagreements}


def sweep_case(g: FiniteGroup, s: frozenset[int]) -> dict | None:
    """Compare the subgroup criterion with the oracle on one set; a bundle on disagreement."""
    h = subgroup_criterion(g, s)
    report = brute_force_homogeneous_sets(cayley_graph(g, s), first_only=True)
    if (h is not None) == (not report.is_prime):
        return None
    return {
        "s": lex_key(s),
        "criterion_subgroup": lex_key(h) if h is not None else None,
        "oracle_witness": lex_key(report.all_homogeneous_sets[0]) if report.all_homogeneous_sets else None,
    }


def sweep_generator_sets(g: FiniteGroup, max_sets: int | None = None, seed: int = 0) -> SweepReport:
    """Subgroup criterion vs oracle over every proper symmetric set, or a seeded sample."""
    sets = list(symmetric_connection_sets(g))
    if max_sets is None:
        if g.order > SWEEP_MAX_ORDER:
            raise CapExceededError(f"exhaustive sweep capped at order {SWEEP_MAX_ORDER}, got {g.order}")
    elif len(sets) > max_sets:
        rng = np.random.default_rng(seed)
        picks = np.sort(rng.choice(len(sets), size=max_sets, replace=False))
        sets = [sets[i] for i in picks]
    report = SweepReport(g.name)
    for s in sets:
        report.cases += 1
        bundle = sweep_case(g, s)
        if bundle is not None:
            report.disagreements.append(bundle)
    return report
