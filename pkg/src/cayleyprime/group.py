"""Finite groups as composition tables.

Elements are the integers ``0..n-1``; ``table[a, b]`` is ``a * b``.
Subgroups, cosets and generator sets are plain ``frozenset`` objects.
When several candidates qualify, routines return the one whose sorted
member list is lexicographically least.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import CapExceededError, ValidationError


def lex_key(s: Iterable[int]) -> list[int]:
    return sorted(s)


class FiniteGroup:
    """Group given by its composition table, validated on construction."""

    __slots__ = ("table", "identity", "inverse", "name", "labels")

    def __init__(self, table, name: str = "group", labels: Sequence | None = None, check: bool = True):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise ValidationError(f"group table must be a nonempty square array, got shape {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise ValidationError("closure violated: table entry out of range")
        t.setflags(write=False)
        self.table = t
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.identity = self._find_identity()
        inv = np.argmax(t == self.identity, axis=1)
        if not (t[np.arange(n), inv] == self.identity).all():
            a = int(np.flatnonzero(t[np.arange(n), inv] != self.identity)[0])
            raise ValidationError(f"element {a} has no inverse", witness=a)
        if not (t[inv, np.arange(n)] == self.identity).all():
            raise ValidationError("left and right inverses differ")
        inv.setflags(write=False)
        self.inverse = inv
        if check:
            self._check_associative()

    def _find_identity(self) -> int:
        n = self.order
        idx = np.arange(n)
        for e in range(n):
            if (self.table[e] == idx).all() and (self.table[:, e] == idx).all():
                return e
        raise ValidationError("table has no two-sided identity")

    def _check_associative(self):
        t, n = self.table, self.order
        if n <= config.ASSOCIATIVITY_EXHAUSTIVE_MAX:
            idx = np.arange(n)
            lhs = t[t[:, :, None], idx[None, None, :]]
            rhs = t[idx[:, None, None], t[None, :, :]]
            bad = np.argwhere(lhs != rhs)
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, config.ASSOCIATIVITY_SAMPLES))
            mask = t[t[a, b], c] != t[a, t[b, c]]
            bad = np.stack([a[mask], b[mask], c[mask]], axis=1)
        if len(bad):
            w = tuple(int(x) for x in bad[0])
            raise ValidationError(f"associativity fails at {w}", witness=w)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


# -- constructors -----------------------------------------------------------


def build_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be positive")
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f"Z{n}", check=False)


def build_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Direct product; the pair ``(x, y)`` has index ``x * |b| + y``."""
    ta, tb = a.table, b.table
    t = ta[:, None, :, None] * b.order + tb[None, :, None, :]
    t = t.reshape(a.order * b.order, a.order * b.order)
    labels = [(x, y) for x in a.labels for y in b.labels]
    return FiniteGroup(t, name=f"{a.name}x{b.name}", labels=labels, check=False)


def build_dihedral(n: int) -> FiniteGroup:
    """Order-``2n`` dihedral group; ``r^i s^j`` has index ``2i + j``."""
    if n < 3:
        raise ValidationError("dihedral group needs n >= 3")
    size = 2 * n
    t = np.empty((size, size), dtype=np.int64)
    for i, j, k, l in itertools.product(range(n), range(2), range(n), range(2)):
        # (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j + l)
        rot = (i + (k if j == 0 else -k)) % n
        t[2 * i + j, 2 * k + l] = 2 * rot + (j + l) % 2
    labels = [f"r{i}" + ("s" if j else "") for i in range(n) for j in range(2)]
    return FiniteGroup(t, name=f"D{n}", labels=labels, check=False)


def group_from_permutations(perms: Sequence[Sequence[int]], name: str = "perm") -> FiniteGroup:
    """Table of a permutation group listed element by element; product is ``p∘q`` (apply ``q`` first)."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        raise ValidationError("duplicate permutations")
    t = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            r = tuple(p[q[x]] for x in range(len(q)))
            if r not in index:
                raise ValidationError("permutation list not closed under composition", witness=(i, j))
            t[i, j] = index[r]
    return FiniteGroup(t, name=name, labels=perms)


def build_symmetric(k: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(k)))
    return group_from_permutations(perms, name=f"S{k}")


def _parity(p) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j]) % 2


def build_alternating(k: int) -> FiniteGroup:
    perms = [p for p in itertools.permutations(range(k)) if _parity(p) == 0]
    return group_from_permutations(perms, name=f"A{k}")


def build_quaternion() -> FiniteGroup:
    """Q8 with elements ``±1, ±i, ±j, ±k``; ``sign * unit`` has index ``2 * unit + (sign < 0)``."""
    # unit products: table[a][b] = (sign, unit) for units 1, i, j, k
    unit = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]
    t = np.empty((8, 8), dtype=np.int64)
    for a, b in itertools.product(range(8), repeat=2):
        sign, u = unit[a // 2][b // 2]
        if (a % 2) ^ (b % 2):
            sign = -sign
        t[a, b] = 2 * u + (sign < 0)
    labels = [("" if x % 2 == 0 else "-") + "1ijk"[x // 2] for x in range(8)]
    return FiniteGroup(t, name="Q8", labels=labels)


# -- subgroups and cosets ---------------------------------------------------


def subgroup_generated(g: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    gens = sorted(set(int(s) for s in seed))
    for s in gens:
        if not 0 <= s < g.order:
            raise ValidationError(f"{s} is not an element of {g.name}", witness=s)
    members = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(g.table[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def is_subgroup(g: FiniteGroup, h: Iterable[int]) -> bool:
    h = set(h)
    if g.identity not in h:
        return False
    arr = np.fromiter(h, dtype=np.int64)
    prod = g.table[np.ix_(arr, arr)]
    return set(prod.ravel().tolist()) <= h and set(g.inverse[arr].tolist()) <= h


def enumerate_subgroups(g: FiniteGroup, cap: int | None = None) -> list[frozenset[int]]:
    """All subgroups, ordered by size then sorted member list.

    Cyclic subgroups are joined pairwise until no new subgroup appears.
    """
    cap = config.max_order() if cap is None else cap
    if g.order > cap:
        raise CapExceededError(f"subgroup enumeration capped at order {cap}, got {g.order}")
    cyclic = {subgroup_generated(g, [x]) for x in g.elements()}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                j = subgroup_generated(g, h | c)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return sorted(found, key=lambda h: (len(h), lex_key(h)))


def right_coset(g: FiniteGroup, h: Iterable[int], c: int) -> frozenset[int]:
    """``{x * c : x in h}``."""
    arr = np.fromiter(set(h), dtype=np.int64)
    return frozenset(g.table[arr, c].tolist())


def left_coset(g: FiniteGroup, h: Iterable[int], c: int) -> frozenset[int]:
    arr = np.fromiter(set(h), dtype=np.int64)
    return frozenset(g.table[c, arr].tolist())


def double_coset(g: FiniteGroup, h: Iterable[int], c: int) -> frozenset[int]:
    """``{x * c * y : x, y in h}``."""
    arr = np.fromiter(set(h), dtype=np.int64)
    xc = g.table[arr, c]
    return frozenset(g.table[np.ix_(xc, arr)].ravel().tolist())


def validate_generator_set(g: FiniteGroup, s: Iterable[int]) -> frozenset[int]:
    """Accept ``s`` iff it omits the identity and is closed under inversion."""
    s = frozenset(int(x) for x in s)
    for x in sorted(s):
        if not 0 <= x < g.order:
            raise ValidationError(f"{x} is not an element of {g.name}", witness=x)
    if g.identity in s:
        raise ValidationError("generator set contains the identity", witness=g.identity)
    for x in sorted(s):
        if g.inv(x) not in s:
            raise ValidationError(f"inverse of {x} ({g.inv(x)}) missing from generator set", witness=x)
    return s


def inverse_set(g: FiniteGroup, s: Iterable[int]) -> frozenset[int]:
    return frozenset(g.inv(x) for x in s)


# -- JSON -------------------------------------------------------------------


def group_from_json(data) -> FiniteGroup:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("group spec needs field 'kind'")
    kind = data["kind"]
    if kind == "cyclic":
        return build_cyclic(_int_field(data, "n"))
    if kind == "dihedral":
        return build_dihedral(_int_field(data, "n"))
    if kind == "product":
        factors = data.get("factors")
        if not isinstance(factors, list) or not factors:
            raise ValidationError("product group spec needs a nonempty 'factors' list")
        out = group_from_json(factors[0])
        for f in factors[1:]:
            out = build_product(out, group_from_json(f))
        return out
    if kind == "table":
        if "table" not in data:
            raise ValidationError("table group spec needs field 'table'")
        t = data["table"]
        if "n" in data and len(t) != int(data["n"]):
            raise ValidationError("field 'n' does not match the table size")
        if len(t) > config.max_order():
            raise CapExceededError(f"group order {len(t)} exceeds cap {config.max_order()}")
        return FiniteGroup(t, name="table")
    raise ValidationError(f"unknown group kind {kind!r} in field 'kind'")


def _int_field(data: dict, key: str) -> int:
    if key not in data:
        raise ValidationError(f"group spec needs field {key!r}")
    try:
        return int(data[key])
    except (TypeError, ValueError):
        raise ValidationError(f"field {key!r} must be an integer") from None
