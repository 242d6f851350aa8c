import json

import numpy as np
import pytest
from hypothesis import given

from cayleyprime.cayley import WreathDecomposition, cayley_graph, wreath_decompose
from cayleyprime.errors import CapExceededError, ValidationError
from cayleyprime.graph import complete_graph, cycle_graph, empty_graph, is_connected, wreath_product
from cayleyprime.group import build_cyclic, build_dihedral
from cayleyprime.oracle import symmetric_connection_sets
from cayleyprime.ring import build_zmod, units
from cayleyprime.ring_cayley import ring_prime_test
from cayleyprime.spectral import Spectrum, adjacency_spectrum, wreath_spectrum, zero_multiplicity_check

from strategies import graphs


def grouped(spec):
    return [(round(v, 6), m) for v, m in spec.grouped()]


def test_basic_spectra():
    assert grouped(adjacency_spectrum(complete_graph(4))) == [(3, 1), (-1, 3)]
    assert grouped(adjacency_spectrum(cycle_graph(4))) == [(2, 1), (0, 2), (-2, 1)]
    assert grouped(adjacency_spectrum(empty_graph(5))) == [(0, 5)]


def test_spectrum_json():
    d = adjacency_spectrum(cycle_graph(4)).to_dict()
    assert json.loads(json.dumps(d)) == {
        "eigenvalues": [{"value": 2.0, "multiplicity": 1}, {"value": 0.0, "multiplicity": 2},
                        {"value": -2.0, "multiplicity": 1}]
    }


def test_spectrum_cap():
    with pytest.raises(CapExceededError):
        adjacency_spectrum(empty_graph(257))
    with pytest.raises(ValueError):
        adjacency_spectrum(empty_graph(2), solver="qr")


def spec(g):
    return adjacency_spectrum(g)


def test_wreath_spectrum_examples():
    k2, k3, e2 = complete_graph(2), complete_graph(3), empty_graph(2)
    out = wreath_spectrum(spec(k2), 2, spec(e2), 2, 0.0)
    assert out.close_to(spec(cycle_graph(4)))
    out = wreath_spectrum(spec(k3), 3, spec(e2), 2, 0.0)
    assert grouped(out) == [(4, 1), (0, 3), (-2, 2)]
    assert out.close_to(spec(wreath_product(k3, e2)))
    c5 = cycle_graph(5)
    assert wreath_spectrum(spec(c5), 5, Spectrum([0.0]), 1, 0.0).close_to(spec(c5))


def test_wreath_spectrum_errors():
    with pytest.raises(ValidationError):
        wreath_spectrum(spec(complete_graph(2)), 2, spec(empty_graph(2)), 2, 1.0)
    with pytest.raises(ValidationError):
        wreath_spectrum(spec(complete_graph(2)), 3, spec(empty_graph(2)), 2, 0.0)


def test_zero_multiplicity_examples():
    z9 = build_zmod(9)
    ok, m, bound = zero_multiplicity_check(z9, units(z9), ring_prime_test(z9, units(z9)))
    assert ok and m == 6 and bound == 4.5
    z8, s8 = build_zmod(8), {1, 3, 5, 7}
    ok, m, bound = zero_multiplicity_check(z8, s8, ring_prime_test(z8, s8))
    assert ok and m == 6 and bound == 4  # K_{4,4}: 0 has multiplicity 6
    z4 = build_zmod(4)
    ok, m, bound = zero_multiplicity_check(z4, {1, 3}, ring_prime_test(z4, {1, 3}))
    assert ok and m == 2 and bound == 2


def test_zero_multiplicity_needs_not_prime_certificate():
    z5 = build_zmod(5)
    with pytest.raises(ValidationError):
        zero_multiplicity_check(z5, {1, 4}, ring_prime_test(z5, {1, 4}))


def corpus_decompositions():
    out = []
    for g in (build_cyclic(6), build_cyclic(8), build_cyclic(9), build_dihedral(4), build_cyclic(10)):
        for s in symmetric_connection_sets(g):
            d = wreath_decompose(cayley_graph(g, s))
            if isinstance(d, WreathDecomposition):
                out.append((cayley_graph(g, s), d))
    return out


def test_wreath_spectrum_matches_decompositions():
    cases = corpus_decompositions()
    assert len(cases) > 50
    for g, d in cases:
        h_spec = spec(d.inner)
        r_h = float(d.inner.degrees()[0])
        predicted = wreath_spectrum(spec(d.outer), d.outer.n, h_spec, d.inner.n, r_h)
        assert predicted.close_to(spec(d.product()))
        assert predicted.close_to(spec(g))  # isomorphic graphs share spectra


@given(graphs(max_n=12))
def test_spectrum_invariants(g):
    s = spec(g)
    assert s.size == g.n
    assert abs(float(np.sum(s.values))) < 1e-8
    assert sum(m for _, m in s.grouped()) == g.n
    degs = g.degrees()
    if g.n and is_connected(g) and len(set(degs)) == 1:
        assert abs(s.values[0] - degs[0]) < 1e-8
