import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayleyprime import kernels
from cayleyprime._accel import HAVE_NUMBA, numba_requested
from cayleyprime.graph import cycle_graph

from strategies import digraphs, graphs


def test_backend_matches_flag():
    assert kernels.BACKEND == ("numba" if HAVE_NUMBA else "numpy")
    if not numba_requested():
        assert not HAVE_NUMBA


def test_c4_masks():
    g = cycle_graph(4)
    assert kernels.homogeneous_masks_loop(g.out_masks(), 4, False).tolist() == [5, 10]
    assert kernels.homogeneous_masks_numpy(g.out_masks(), 4, False).tolist() == [5, 10]


@given(graphs(max_n=10), st.booleans())
def test_subset_enumeration_paths_agree(g, first_only):
    a = kernels.homogeneous_masks_loop(g.out_masks(), g.n, first_only)
    b = kernels.homogeneous_masks_numpy(g.out_masks(), g.n, first_only)
    assert a.tolist() == b.tolist()


@given(digraphs(max_n=8), st.booleans())
def test_bihomogeneous_paths_agree(d, first_only):
    a = kernels.bihomogeneous_masks_loop(d.out_masks(), d.in_masks(), d.n, first_only)
    b = kernels.bihomogeneous_masks_numpy(d.out_masks(), d.in_masks(), d.n, first_only)
    assert a.tolist() == b.tolist()


@given(graphs(min_n=2, max_n=10), st.data())
def test_mask_check_paths_agree(g, data):
    full = (1 << g.n) - 1
    masks = np.array(data.draw(st.lists(st.integers(1, full), min_size=1, max_size=20)), dtype=np.int64)
    assert kernels.masks_homogeneous_loop(g.out_masks(), g.n, masks).tolist() == kernels.masks_homogeneous_numpy(
        g.out_masks(), g.n, masks
    ).tolist()


@given(graphs(min_n=2, max_n=10), st.data())
def test_closure_paths_agree(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    adj = np.ascontiguousarray(g.adj)
    assert np.array_equal(kernels.pair_closures_loop(adj, v), kernels.pair_closures_numpy(adj, v))


@pytest.mark.parametrize("impl", [kernels.jacobi_eigenvalues_loop, kernels.jacobi_eigenvalues_numpy])
@given(st.integers(1, 24), st.integers(0, 2**31))
def test_jacobi_matches_lapack(impl, n, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n))
    m = m + m.T
    got = np.sort(impl(m, 1e-13, 100))
    assert np.allclose(got, np.linalg.eigvalsh(m), atol=1e-9)


def test_jacobi_residual_at_full_size():
    rng = np.random.default_rng(7)
    a = (rng.random((256, 256)) < 0.3).astype(float)
    a = np.triu(a, 1)
    a = a + a.T
    got = np.sort(kernels.jacobi_eigenvalues(a, 1e-13, 100))
    assert np.max(np.abs(got - np.linalg.eigvalsh(a))) < 1e-9
