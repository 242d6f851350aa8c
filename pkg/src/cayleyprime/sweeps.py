"""Oracle-agreement sweeps over families of groups, rings and characters.

Each family expands into independent tasks. A task is a small picklable
tuple, and its worker returns a plain dict. :func:`run_family` fans the
tasks out over a process pool and merges the results in task order.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from .cayley import (
    WreathDecomposition,
    cayley_digraph,
    cayley_graph,
    double_coset_criterion,
    is_homogeneous,
    subgroup_criterion,
    wreath_decompose,
)
from .errors import HypothesisError
from .graph import empty_graph, is_anti_connected, is_connected, verify_isomorphism
from .group import lex_key
from .oracle import (
    asymmetric_connection_sets,
    brute_force_bihomogeneous_sets,
    brute_force_homogeneous_sets,
    oracle_is_prime,
    symmetric_connection_sets,
)
from .ring import (
    build_gf,
    build_ring_product,
    build_zmod,
    enumerate_ideals,
    is_even,
    jacobson_radical,
    power_residue_character,
    prime_factors,
    unit_subgroups,
)
from .ring_cayley import (
    HYPOTHESES_NOT_MET,
    NOT_PRIME,
    complete_tensor_connectivity,
    complete_tensor_graph,
    ideal_is_homogeneous,
    paley_graph,
    paley_prime_test,
    ring_cayley,
    ring_prime_test,
    unitary_graph,
    unitary_prime_classification,
)
from .spectral import adjacency_spectrum, wreath_spectrum, zero_multiplicity_check
from .specs import parse_group, parse_ring_factor

UNDIRECTED_GROUPS = tuple(f"cyclic:{n}" for n in range(1, 13)) + (
    "cyclic:2xcyclic:2",
    "cyclic:2xcyclic:4",
    "cyclic:3xcyclic:3",
    "dihedral:3",
    "dihedral:4",
)

DIRECTED_GROUPS = tuple(f"cyclic:{n}" for n in range(1, 13)) + (
    "cyclic:2xcyclic:2",
    "cyclic:2xcyclic:4",
    "cyclic:2xcyclic:2xcyclic:2",
    "cyclic:2xcyclic:6",
    "cyclic:3xcyclic:3",
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "quaternion",
    "alternating:4",
)

PALEY_FIELDS = (3, 5, 7, 9, 11, 13, 25)


def prime_powers(limit: int) -> list[int]:
    return [q for q in range(2, limit + 1) if len(set(prime_factors(q))) == 1]


@lru_cache(maxsize=None)
def _group(spec: str):
    return parse_group(spec)


# -- undirected group sweep ----------------------------------------------------------


def group_task(spec: str) -> dict:
    """Subgroup criterion vs oracle, decomposition round trips and overlapping-union closure."""
    g = _group(spec)
    out = {"task": spec, "cases": 0, "disagreements": [], "roundtrip_failures": [], "union_failures": []}
    for s in symmetric_connection_sets(g):
        out["cases"] += 1
        cay = cayley_graph(g, s)
        oracle = brute_force_homogeneous_sets(cay)
        h = subgroup_criterion(g, s)
        if (h is not None) == oracle.is_prime:
            out["disagreements"].append({"s": lex_key(s), "criterion_subgroup": h and lex_key(h)})
        dec = wreath_decompose(cay)
        if oracle.is_prime:
            if dec != "prime":
                out["roundtrip_failures"].append({"s": lex_key(s), "got": "decomposition of a prime graph"})
        elif not isinstance(dec, WreathDecomposition) or not verify_isomorphism(dec.product(), cay, dec.iso):
            out["roundtrip_failures"].append({"s": lex_key(s), "got": dec if isinstance(dec, str) else "bad iso"})
        sets = oracle.all_homogeneous_sets
        for a, b in itertools.combinations(sets, 2):
            if a & b and not is_homogeneous(cay, a | b):
                out["union_failures"].append({"s": lex_key(s), "a": lex_key(a), "b": lex_key(b)})
    return out


# -- directed group sweep -------------------------------------------------------------


def directed_task(spec: str) -> dict:
    g = _group(spec)
    out = {"task": spec, "cases": 0, "skipped": 0, "disagreements": []}
    for s in asymmetric_connection_sets(g):
        try:
            h = double_coset_criterion(g, s)
        except HypothesisError:
            out["skipped"] += 1
            continue
        out["cases"] += 1
        found = not brute_force_bihomogeneous_sets(cayley_digraph(g, s), first_only=True).is_prime
        if found != (h is not None):
            out["disagreements"].append({"s": lex_key(s), "criterion_subgroup": h and lex_key(h)})
    return out


# -- ring ideal sweep -----------------------------------------------------------------


def ideal_task(n: int) -> dict:
    """Homogeneous-ideal equivalence, radical containment and spectrum checks on ``Z/n``."""
    r = build_zmod(n)
    rad = jacobson_radical(r)
    ideals = enumerate_ideals(r)
    out = {
        "task": f"Z/{n}",
        "cases": 0,
        "disagreements": [],
        "radical_violations": [],
        "spectrum_cases": 0,
        "spectrum_violations": [],
        "hypothesis_cases": 0,
    }
    for s in unit_subgroups(r):
        g = ring_cayley(r, s)
        for i in ideals:
            out["cases"] += 1
            fast = ideal_is_homogeneous(r, s, i)
            if fast != is_homogeneous(g, i):
                out["disagreements"].append({"s": lex_key(s), "ideal": lex_key(i)})
            if fast and 1 < len(i) < r.size and not i <= rad:
                out["radical_violations"].append({"s": lex_key(s), "ideal": lex_key(i)})
        cert = ring_prime_test(r, s)
        if cert.verdict != NOT_PRIME:
            continue
        out["spectrum_cases"] += 1
        if is_connected(g) and is_anti_connected(g):
            out["hypothesis_cases"] += 1
        ok, m, bound = zero_multiplicity_check(r, s, cert)
        form = cert.wreath
        quotient_spec = adjacency_spectrum(form.quotient)
        inner = adjacency_spectrum(empty_graph(form.cocomplete))
        predicted = wreath_spectrum(quotient_spec, form.quotient.n, inner, form.cocomplete, 0.0)
        actual = adjacency_spectrum(form.product())
        if not ok or not predicted.close_to(actual) or not actual.close_to(adjacency_spectrum(g)):
            out["spectrum_violations"].append({"s": lex_key(s), "zero_multiplicity": m, "bound": bound})
    return out


# -- Paley sweep ----------------------------------------------------------------------


def paley_task(q: int) -> dict:
    ps = prime_factors(q)
    f = build_gf(ps[0], len(ps))
    out = {"task": f"F{q}", "cases": 0, "disagreements": [], "odd_skipped": 0, "graph_level_cases": 0}
    for d in range(1, q):
        if (q - 1) % d:
            continue
        psi = power_residue_character(f, d)
        if not is_even(psi):
            out["odd_skipped"] += 1
            continue
        out["cases"] += 1
        cert = paley_prime_test(psi)
        g = paley_graph(psi)
        truth = oracle_is_prime(g)
        if cert.verdict == HYPOTHESES_NOT_MET:
            out["graph_level_cases"] += 1
            if is_connected(g):
                out["disagreements"].append({"d": d, "verdict": cert.verdict, "reason": "refused a connected graph"})
        if (cert.resolved_verdict == "prime") != truth:
            out["disagreements"].append({"d": d, "verdict": cert.verdict, "oracle_prime": truth})
    return out


# -- unitary sweep --------------------------------------------------------------------


def field_product_specs(limit: int) -> list[str]:
    """Every multiset of field orders (two or more) with product at most ``limit``, plus every single field."""
    qs = prime_powers(limit)
    out = [f"f{q}" for q in qs]
    for d in range(2, int(math.log2(limit)) + 1):
        for combo in itertools.combinations_with_replacement(qs, d):
            if math.prod(combo) <= limit:
                out.append(",".join(f"f{q}" for q in combo))
    return out


def unitary_task(spec: str) -> dict:
    r = build_ring_product([parse_ring_factor(f) for f in spec.split(",")])
    rule, trace = unitary_prime_classification(r)
    truth = oracle_is_prime(unitary_graph(r))
    out = {"task": spec, "cases": 1, "disagreements": []}
    if rule != truth:
        out["disagreements"].append({"ring": r.name, "rule": rule, "oracle": truth, "trace": trace})
    return out


# -- tensor connectivity sweep --------------------------------------------------------


def size_tuples(limit: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, start, prod):
        if len(prefix) >= 1:
            out.append(tuple(prefix))
        for n in range(start, limit // prod + 1):
            rec(prefix + [n], n, prod * n)

    rec([], 2, 1)
    return sorted(out)


def tensor_task(sizes: tuple[int, ...]) -> dict:
    rule = complete_tensor_connectivity(sizes)
    truth = is_connected(complete_tensor_graph(sizes))
    out = {"task": "x".join(f"K{n}" for n in sizes), "cases": 1, "disagreements": []}
    if rule != truth:
        out["disagreements"].append({"sizes": list(sizes), "rule": rule, "bfs": truth})
    return out


# -- driver ---------------------------------------------------------------------------


def family_tasks(family: str, limit: int | None = None, groups=None):
    if family == "groups":
        return group_task, list(groups or UNDIRECTED_GROUPS)
    if family == "cyclic":
        return group_task, [f"cyclic:{n}" for n in range(1, (limit or 12) + 1)]
    if family == "directed":
        return directed_task, list(groups or DIRECTED_GROUPS)
    if family == "ideals":
        return ideal_task, list(range(2, (limit or 30) + 1))
    if family == "paley":
        return paley_task, [q for q in PALEY_FIELDS if q <= (limit or 25)]
    if family == "unitary":
        lim = limit or 36
        return unitary_task, [f"z{n}" for n in range(2, lim + 1)] + field_product_specs(lim)
    if family == "tensor":
        return tensor_task, size_tuples(limit or 64)
    raise ValueError(f"unknown sweep family {family!r}")


FAMILIES = ("groups", "cyclic", "directed", "ideals", "paley", "unitary", "tensor")

_LIST_KEYS = ("disagreements", "roundtrip_failures", "union_failures", "radical_violations", "spectrum_violations")


def run_family(family: str, limit: int | None = None, jobs: int = 1, groups=None) -> dict:
    worker, tasks = family_tasks(family, limit, groups)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, tasks))
    else:
        results = [worker(t) for t in tasks]
    merged = {"family": family, "tasks": len(results), "results": results}
    for key in ("cases", "skipped", "spectrum_cases", "hypothesis_cases", "odd_skipped", "graph_level_cases"):
        if any(key in r for r in results):
            merged[key] = sum(r.get(key, 0) for r in results)
    failures = []
    for r in results:
        for key in _LIST_KEYS:
            failures.extend({"task": r["task"], "kind": key, **b} for b in r.get(key, []))
    merged["failures"] = failures
    merged["ok"] = not failures
    return merged
