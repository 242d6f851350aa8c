"""Finite commutative rings: ``Z/n``, ``GF(p^k)`` and finite products.

Elements are indexed ``0..size-1`` with 0 the additive identity:

* ``Z/n``: the residue itself;
* ``GF(p, k)``: the coefficient vector ``(c0, ..., c_{k-1})`` read in base
  ``p``, so index ``sum(c_i * p**i)``;
* products: mixed radix with the first factor most significant.

Ideals are ``frozenset`` objects; witness selection always picks the ideal
whose sorted member list is lexicographically least.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import config
from .errors import CapExceededError, CayleyError, ValidationError
from .group import lex_key

ZERO = -1  # tag for the value 0 of a multiplicative function


def is_prime_number(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over Z/p (coefficient lists, lowest degree first) -----------


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a = _poly_trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _digits(x: int, p: int, k: int) -> list[int]:
    return [(x // p**i) % p for i in range(k)]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1..deg/2``."""
    poly = _poly_trim(poly)
    k = len(poly) - 1
    for deg in range(1, k // 2 + 1):
        for low in range(p**deg):
            divisor = _digits(low, p, deg) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return k >= 1


def least_irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible of degree ``k``, least by ``(c_{k-1}, ..., c0)``."""
    for low in range(p**k):
        cand = _digits(low, p, k) + [1]
        if is_irreducible(cand, p):
            return cand
    raise CayleyError(f"no irreducible polynomial of degree {k} over Z/{p}")


# -- the ring class ---------------------------------------------------------


class FiniteCommRing:
    """Structured finite commutative ring with dense operation tables."""

    __slots__ = ("kind", "n", "p", "k", "modulus", "factors", "add", "mul", "neg", "one", "name", "_coords")

    def __init__(self, kind, add, mul, one, name, *, n=None, p=None, k=None, modulus=None, factors=()):
        self.kind = kind
        self.n, self.p, self.k = n, p, k
        self.modulus = tuple(modulus) if modulus is not None else None
        self.factors = tuple(factors)
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
        for t in (add, mul):
            t.setflags(write=False)
        self.add, self.mul = add, mul
        neg = np.argmax(add == 0, axis=1)
        neg.setflags(write=False)
        self.neg = neg
        self.one = int(one)
        self.name = name
        self._coords = None
        self._check_axioms()

    @property
    def size(self) -> int:
        return self.add.shape[0]

    @property
    def zero(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.size)

    def minus_one(self) -> int:
        return int(self.neg[self.one])

    def coords(self) -> np.ndarray:
        """``(size, len(factors))`` array of factor indices (products only)."""
        if self._coords is None:
            sizes = [f.size for f in self.factors]
            grids = np.indices(sizes).reshape(len(sizes), -1).T
            grids.setflags(write=False)
            self._coords = grids
        return self._coords

    def label(self, x: int):
        if self.kind == "zmod":
            return x
        if self.kind == "gf":
            return tuple(_digits(x, self.p, self.k))
        return tuple(f.label(int(c)) for f, c in zip(self.factors, self.coords()[x]))

    def _check_axioms(self):
        a, m, n = self.add, self.mul, self.size
        if n < 2:
            raise ValidationError("ring must have at least two elements (1 != 0)")
        if a.shape != (n, n) or m.shape != (n, n) or a.min() < 0 or a.max() >= n or m.min() < 0 or m.max() >= n:
            raise ValidationError("operation tables malformed")
        idx = np.arange(n)
        if not (a[0] == idx).all():
            raise ValidationError("0 is not an additive identity")
        if not (m[self.one] == idx).all():
            raise ValidationError("1 is not a multiplicative identity")
        if not (a[idx, self.neg] == 0).all():
            raise ValidationError("additive inverses missing")
        if not (np.array_equal(a, a.T) and np.array_equal(m, m.T)):
            raise ValidationError("ring is not commutative")
        if n <= config.ASSOCIATIVITY_EXHAUSTIVE_MAX:
            x, y, z = idx[:, None, None], idx[None, :, None], idx[None, None, :]
        else:
            rng = np.random.default_rng(0)
            x, y, z = rng.integers(0, n, size=(3, config.ASSOCIATIVITY_SAMPLES))
        if not (a[a[x, y], z] == a[x, a[y, z]]).all():
            raise ValidationError("addition not associative")
        if not (m[m[x, y], z] == m[x, m[y, z]]).all():
            raise ValidationError("multiplication not associative")
        if not (m[x, a[y, z]] == a[m[x, y], m[x, z]]).all():
            raise ValidationError("distributivity fails")

    def __eq__(self, other):
        return (
            isinstance(other, FiniteCommRing)
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
            and self.one == other.one
        )

    def __hash__(self):
        return hash((self.add.tobytes(), self.mul.tobytes()))

    def __repr__(self):
        return f"FiniteCommRing({self.name}, size={self.size})"


def _check_size(size: int):
    cap = config.max_order()
    if size > cap:
        raise CapExceededError(f"ring size {size} exceeds cap {cap}")


def build_zmod(n: int) -> FiniteCommRing:
    if n < 2:
        raise ValidationError("Z/n needs n >= 2")
    _check_size(n)
    idx = np.arange(n)
    return FiniteCommRing(
        "zmod", (idx[:, None] + idx[None, :]) % n, (idx[:, None] * idx[None, :]) % n, 1, f"Z/{n}", n=n
    )


def build_gf(p: int, k: int = 1) -> FiniteCommRing:
    if not is_prime_number(p):
        raise ValidationError(f"characteristic {p} is not prime", witness=p)
    if k < 1:
        raise ValidationError("extension degree must be positive")
    q = p**k
    _check_size(q)
    modulus = least_irreducible(p, k)
    digits = [_digits(x, p, k) for x in range(q)]
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    weights = [p**i for i in range(k)]
    for x in range(q):
        for y in range(x, q):
            s = sum(((a + b) % p) * w for a, b, w in zip(digits[x], digits[y], weights))
            r = _poly_mod(_poly_mul(_poly_trim(digits[x]), _poly_trim(digits[y]), p), modulus, p)
            prod = sum(c * w for c, w in zip(r, weights))
            add[x, y] = add[y, x] = s
            mul[x, y] = mul[y, x] = prod
    name = f"F{q}"
    return FiniteCommRing("gf", add, mul, 1, name, p=p, k=k, modulus=modulus)


def build_ring_product(factors: Sequence[FiniteCommRing]) -> FiniteCommRing:
    factors = list(factors)
    if not factors:
        raise ValidationError("product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    _check_size(math.prod(f.size for f in factors))

    def fold(t1, n1, t2, n2):
        t = t1[:, None, :, None] * n2 + t2[None, :, None, :]
        return t.reshape(n1 * n2, n1 * n2)

    add, mul, one, size = factors[0].add, factors[0].mul, factors[0].one, factors[0].size
    for f in factors[1:]:
        add = fold(add, size, f.add, f.size)
        mul = fold(mul, size, f.mul, f.size)
        one = one * f.size + f.one
        size *= f.size
    name = "x".join(f.name for f in factors)
    return FiniteCommRing("product", add, mul, one, name, factors=factors)


# -- units, ideals, radical -------------------------------------------------


def _mask_to_set(mask: np.ndarray) -> frozenset[int]:
    return frozenset(np.flatnonzero(mask).tolist())


def _unit_mask(r: FiniteCommRing) -> np.ndarray:
    if r.kind == "zmod":
        return np.array([math.gcd(x, r.n) == 1 for x in range(r.size)])
    if r.kind == "gf":
        m = np.ones(r.size, dtype=bool)
        m[0] = False
        return m
    return reduce(np.kron, [_unit_mask(f) for f in r.factors]).astype(bool)


def units(r: FiniteCommRing) -> frozenset[int]:
    """Units via the structural rule (gcd / nonzero / componentwise)."""
    return _mask_to_set(_unit_mask(r))


def units_by_table(r: FiniteCommRing) -> frozenset[int]:
    return _mask_to_set((r.mul == r.one).any(axis=1))


def is_field(r: FiniteCommRing) -> bool:
    return len(units(r)) == r.size - 1


def _ideal_masks(r: FiniteCommRing) -> list[np.ndarray]:
    if r.kind == "zmod":
        idx = np.arange(r.size)
        return [idx % d == 0 for d in range(1, r.n + 1) if r.n % d == 0]
    if r.kind == "gf":
        zero = np.zeros(r.size, dtype=bool)
        zero[0] = True
        return [zero, np.ones(r.size, dtype=bool)]
    out = [np.ones(1, dtype=bool)]
    for f in r.factors:
        out = [np.kron(a, b).astype(bool) for a in out for b in _ideal_masks(f)]
    return out


def enumerate_ideals(r: FiniteCommRing) -> list[frozenset[int]]:
    """All ideals, ordered by size then sorted member list."""
    _check_size(r.size)
    ideals = {_mask_to_set(m) for m in _ideal_masks(r)}
    return sorted(ideals, key=lambda i: (len(i), lex_key(i)))


def nontrivial_ideals(r: FiniteCommRing) -> list[frozenset[int]]:
    """Ideals other than ``{0}`` and ``R``, in lexicographic order."""
    return sorted((i for i in enumerate_ideals(r) if 1 < len(i) < r.size), key=lex_key)


def is_ideal(r: FiniteCommRing, i: Iterable[int]) -> bool:
    i = frozenset(i)
    if 0 not in i:
        return False
    arr = np.fromiter(i, dtype=np.int64)
    sums = set(r.add[np.ix_(arr, arr)].ravel().tolist())
    absorbed = set(r.mul[:, arr].ravel().tolist())
    negs = set(r.neg[arr].tolist())
    return sums <= i and absorbed <= i and negs <= i


def maximal_ideals(r: FiniteCommRing) -> list[frozenset[int]]:
    proper = [i for i in enumerate_ideals(r) if len(i) < r.size]
    return [i for i in proper if not any(i < j for j in proper)]


def nilpotents(r: FiniteCommRing) -> frozenset[int]:
    idx = np.arange(r.size)
    cur = idx.copy()
    nil = cur == 0
    for _ in range(r.size):
        cur = r.mul[cur, idx]
        nil |= cur == 0
    return _mask_to_set(nil)


def jacobson_radical(r: FiniteCommRing) -> frozenset[int]:
    """Nilpotent elements, cross-checked against the intersection of maximal ideals."""
    nil = nilpotents(r)
    inter = reduce(frozenset.intersection, maximal_ideals(r))
    if nil != inter:
        raise CayleyError(f"radical mismatch in {r.name}: nilpotents {lex_key(nil)} vs {lex_key(inter)}")
    return nil


def is_semisimple(r: FiniteCommRing) -> bool:
    return jacobson_radical(r) == frozenset({0})


# -- homomorphisms and quotients ---------------------------------------------


class RingHom:
    """Ring homomorphism given by its element map; checked exhaustively."""

    __slots__ = ("domain", "codomain", "map")

    def __init__(self, domain: FiniteCommRing, codomain: FiniteCommRing, mapping):
        m = np.asarray(mapping, dtype=np.int64)
        if m.shape != (domain.size,) or m.min() < 0 or m.max() >= codomain.size:
            raise ValidationError("homomorphism map has the wrong shape or range")
        if m[0] != 0 or m[domain.one] != codomain.one:
            raise ValidationError("homomorphism must preserve 0 and 1")
        if not np.array_equal(m[domain.add], codomain.add[m[:, None], m[None, :]]):
            raise ValidationError("homomorphism does not preserve addition")
        if not np.array_equal(m[domain.mul], codomain.mul[m[:, None], m[None, :]]):
            raise ValidationError("homomorphism does not preserve multiplication")
        m.setflags(write=False)
        self.domain, self.codomain, self.map = domain, codomain, m

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def image(self, xs: Iterable[int]) -> frozenset[int]:
        return frozenset(int(self.map[x]) for x in xs)

    def preimage(self, ys: Iterable[int]) -> frozenset[int]:
        ys = set(ys)
        return frozenset(x for x in range(self.domain.size) if int(self.map[x]) in ys)

    def kernel(self) -> frozenset[int]:
        return self.preimage({0})

    def is_surjective(self) -> bool:
        return len(set(self.map.tolist())) == self.codomain.size


def _quotient_map(r: FiniteCommRing, i: frozenset[int]):
    """Returns ``(ring | None, element map)``; ``None`` means the zero ring."""
    if len(i) == r.size:
        return None, np.zeros(r.size, dtype=np.int64)
    if len(i) == 1:
        return r, np.arange(r.size)
    if r.kind == "zmod":
        d = reduce(math.gcd, i, r.n)
        return build_zmod(d), np.arange(r.size) % d
    if r.kind == "gf":
        raise CayleyError("fields have no non-trivial ideals")
    coords = r.coords()
    parts = [frozenset(coords[list(i), j].tolist()) for j in range(len(r.factors))]
    if math.prod(len(p) for p in parts) != len(i):
        raise ValidationError("set is not an ideal of the product ring")
    rings, maps = [], []
    for j, (f, part) in enumerate(zip(r.factors, parts)):
        qf, mf = _quotient_map(f, part)
        if qf is not None:
            rings.append(qf)
            maps.append(np.asarray(mf)[coords[:, j]])
    q = build_ring_product(rings)
    mapping = np.zeros(r.size, dtype=np.int64)
    for qf, mf in zip(rings, maps):
        mapping = mapping * qf.size + mf
    return q, mapping


def quotient(r: FiniteCommRing, i: Iterable[int]):
    """``(R/I, canonical projection)`` with a structured quotient ring."""
    i = frozenset(int(x) for x in i)
    if not is_ideal(r, i):
        raise ValidationError("not an ideal", witness=lex_key(i))
    if len(i) == r.size:
        raise ValidationError("cannot take the quotient by the whole ring")
    q, mapping = _quotient_map(r, i)
    hom = RingHom(r, q, mapping)
    if hom.kernel() != i:
        raise CayleyError("quotient map kernel differs from the ideal")
    return q, hom


def semisimplify(r: FiniteCommRing):
    """``(R / Rad R, projection)``; units correspond exactly under the projection."""
    q, hom = quotient(r, jacobson_radical(r))
    u, uq = units(r), units(q)
    for x in range(r.size):
        if (x in u) != (hom(x) in uq):
            raise CayleyError(f"unit correspondence fails at {x}")
    return q, hom


def field_sizes(r: FiniteCommRing) -> list[int]:
    """Sizes of the field factors of a semisimple ring."""
    if r.kind == "gf":
        return [r.size]
    if r.kind == "zmod":
        ps = prime_factors(r.n)
        if len(set(ps)) != len(ps):
            raise ValidationError(f"{r.name} is not semisimple")
        return ps
    return [q for f in r.factors for q in field_sizes(f)]


# -- unit subgroups and primitive pairs --------------------------------------


def validate_unit_subgroup(r: FiniteCommRing, s: Iterable[int]) -> frozenset[int]:
    """``s`` must be a multiplicative subgroup of the units containing -1."""
    s = frozenset(int(x) for x in s)
    u = units(r)
    for x in sorted(s):
        if x not in u:
            raise ValidationError(f"{x} is not a unit of {r.name}", witness=x)
    if r.one not in s:
        raise ValidationError("unit subgroup must contain 1", witness=r.one)
    arr = np.fromiter(s, dtype=np.int64)
    prods = r.mul[np.ix_(arr, arr)]
    outside = sorted(set(prods.ravel().tolist()) - s)
    if outside:
        raise ValidationError(f"set not closed under multiplication: {outside[0]} escapes", witness=outside[0])
    if r.minus_one() not in s:
        raise ValidationError("-1 must belong to S", witness=r.minus_one())
    return s


def unit_subgroups(r: FiniteCommRing, require_minus_one: bool = True) -> list[frozenset[int]]:
    """Subgroups of the unit group (optionally only those containing -1), lex ordered."""
    from .group import FiniteGroup, enumerate_subgroups

    u = sorted(units(r))
    pos = {x: k for k, x in enumerate(u)}
    table = [[pos[int(r.mul[a, b])] for b in u] for a in u]
    subs = [frozenset(u[k] for k in h) for h in enumerate_subgroups(FiniteGroup(table, check=False))]
    if require_minus_one:
        subs = [h for h in subs if r.minus_one() in h]
    return sorted(subs, key=lex_key)


def ideal_sum(r: FiniteCommRing, s: Iterable[int], i: Iterable[int]) -> frozenset[int]:
    """``S + I``."""
    sa = np.fromiter(set(s), dtype=np.int64)
    ia = np.fromiter(set(i), dtype=np.int64)
    return frozenset(r.add[np.ix_(sa, ia)].ravel().tolist())


class Primitivity(NamedTuple):
    primitive: bool
    witness: frozenset[int] | None


def pair_primitive(r: FiniteCommRing, s: Iterable[int]) -> Primitivity:
    """Primitive iff no non-trivial ideal ``I`` has ``S + I = S``."""
    s = validate_unit_subgroup(r, s)
    for i in nontrivial_ideals(r):
        if ideal_sum(r, s, i) == s:
            return Primitivity(False, i)
    return Primitivity(True, None)


# -- multiplicative functions --------------------------------------------------


class MultiplicativeFunction:
    """Map ``R -> {0} ∪ μ_d``: ``values[x]`` is ``ZERO`` or an exponent ``e`` meaning ``exp(2πie/d)``."""

    __slots__ = ("ring", "order", "values")

    def __init__(self, ring: FiniteCommRing, order: int, values):
        v = np.asarray(values, dtype=np.int64)
        if order < 1:
            raise ValidationError("order must be positive")
        if v.shape != (ring.size,):
            raise ValidationError(f"need {ring.size} values, got {v.shape}")
        if ((v != ZERO) & ((v < 0) | (v >= order))).any():
            raise ValidationError("values must be ZERO or exponents in 0..order-1")
        if v[0] != ZERO:
            raise ValidationError("psi(0) must be 0", witness=0)
        if v[ring.one] != 0:
            raise ValidationError("psi(1) must be 1", witness=ring.one)
        va, vb = v[:, None], v[None, :]
        expect = np.where((va == ZERO) | (vb == ZERO), ZERO, (va + vb) % order)
        bad = np.argwhere(v[ring.mul] != expect)
        if len(bad):
            a, b = map(int, bad[0])
            raise ValidationError(f"psi({a}*{b}) != psi({a})psi({b})", witness=(a, b))
        v.setflags(write=False)
        self.ring, self.order, self.values = ring, int(order), v

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def __repr__(self):
        return f"MultiplicativeFunction({self.ring.name}, order={self.order})"


def principal_function(r: FiniteCommRing) -> MultiplicativeFunction:
    """1 on units, 0 elsewhere."""
    return MultiplicativeFunction(r, 1, np.where(_unit_mask(r), 0, ZERO))


def primitive_root(f: FiniteCommRing) -> int:
    """Least element generating the multiplicative group of a field."""
    if not is_field(f):
        raise ValidationError(f"{f.name} is not a field")
    q = f.size
    for g in range(1, q):
        x, order = g, 1
        while x != f.one:
            x = int(f.mul[x, g])
            order += 1
        if order == q - 1:
            return g
    raise CayleyError("no primitive root found")


def power_residue_character(f: FiniteCommRing, d: int) -> MultiplicativeFunction:
    q = f.size
    if not is_field(f):
        raise ValidationError(f"{f.name} is not a field")
    if d < 1 or (q - 1) % d:
        raise ValidationError(f"d={d} does not divide q-1={q - 1}", witness=d)
    g = primitive_root(f)
    values = np.full(q, ZERO, dtype=np.int64)
    x = f.one
    for j in range(q - 1):
        values[x] = j % d
        x = int(f.mul[x, g])
    return MultiplicativeFunction(f, d, values)


def function_product(psi1: MultiplicativeFunction, psi2: MultiplicativeFunction) -> MultiplicativeFunction:
    """``(a, b) -> psi1(a) psi2(b)`` on the product ring."""
    r = build_ring_product([psi1.ring, psi2.ring])
    order = math.lcm(psi1.order, psi2.order)
    v1 = np.repeat(psi1.values, psi2.ring.size)
    v2 = np.tile(psi2.values, psi1.ring.size)
    e = (v1 * (order // psi1.order) + v2 * (order // psi2.order)) % order
    return MultiplicativeFunction(r, order, np.where((v1 == ZERO) | (v2 == ZERO), ZERO, e))


def pullback(psi: MultiplicativeFunction, hom: RingHom) -> MultiplicativeFunction:
    if hom.codomain != psi.ring:
        raise ValidationError("homomorphism codomain must be the function's ring")
    return MultiplicativeFunction(hom.domain, psi.order, psi.values[hom.map])


def kernel(psi: MultiplicativeFunction) -> frozenset[int]:
    """Elements where psi equals 1."""
    return _mask_to_set(psi.values == 0)


def is_even(psi: MultiplicativeFunction) -> bool:
    return psi(psi.ring.minus_one()) == 0


def is_primitive(psi: MultiplicativeFunction) -> Primitivity:
    """Primitive unless psi is constant on every coset of some non-trivial ideal."""
    r = psi.ring
    for i in nontrivial_ideals(r):
        arr = np.fromiter(i, dtype=np.int64)
        if (psi.values[r.add[:, arr]] == psi.values[:, None]).all():
            return Primitivity(False, i)
    return Primitivity(True, None)


# -- JSON ---------------------------------------------------------------------


def ring_from_json(data) -> FiniteCommRing:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("ring spec needs field 'kind'")
    kind = data["kind"]
    try:
        if kind == "zmod":
            return build_zmod(int(data["n"]))
        if kind == "gf":
            return build_gf(int(data["p"]), int(data.get("k", 1)))
        if kind == "product":
            factors = data["factors"]
            if not isinstance(factors, list) or not factors:
                raise ValidationError("product ring spec needs a nonempty 'factors' list")
            return build_ring_product([ring_from_json(f) for f in factors])
    except KeyError as exc:
        raise ValidationError(f"ring spec of kind {kind!r} needs field {exc.args[0]!r}") from None
    raise ValidationError(f"unknown ring kind {kind!r} in field 'kind'")


def character_from_json(r: FiniteCommRing, data) -> MultiplicativeFunction:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("character spec needs field 'kind'")
    kind = data["kind"]
    if kind == "principal":
        return principal_function(r)
    if kind == "power_residue":
        if "d" not in data:
            raise ValidationError("power_residue character needs field 'd'")
        return power_residue_character(r, int(data["d"]))
    if kind == "table":
        if "d" not in data or "values" not in data:
            raise ValidationError("table character needs fields 'd' and 'values'")
        vals = [ZERO if v is None or v == "zero" else int(v) for v in data["values"]]
        return MultiplicativeFunction(r, int(data["d"]), vals)
    raise ValidationError(f"unknown character kind {kind!r} in field 'kind'")
