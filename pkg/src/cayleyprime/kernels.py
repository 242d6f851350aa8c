"""Hot numeric kernels, each with a compiled loop and a pure-numpy twin.

The public functions dispatch on :data:`cayleyprime._accel.HAVE_NUMBA`.
The ``*_loop`` and ``*_numpy`` variants are importable so tests and the
benchmark can exercise both paths regardless of the active backend.

Vertex sets are passed either as boolean vectors or as int64 bitmasks
(bit ``v`` set means vertex ``v`` is a member); bitmask kernels require
``n <= MAX_MASK_BITS``.
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit

MAX_MASK_BITS = 62
_CHUNK = 1 << 16


# -- subset enumeration -----------------------------------------------------


@njit
def homogeneous_masks_loop(adj_masks, n, first_only):
    full = (1 << n) - 1
    out = np.empty(64, np.int64)
    count = 0
    for mask in range(3, full):
        if (mask & (mask - 1)) == 0:
            continue
        ok = True
        for v in range(n):
            if (mask >> v) & 1:
                continue
            inter = adj_masks[v] & mask
            if inter != 0 and inter != mask:
                ok = False
                break
        if ok:
            if count == out.shape[0]:
                grown = np.empty(2 * count, np.int64)
                grown[:count] = out
                out = grown
            out[count] = mask
            count += 1
            if first_only:
                break
    return out[:count].copy()


def homogeneous_masks_numpy(adj_masks, n, first_only):
    adj_masks = np.asarray(adj_masks, dtype=np.int64)
    full = (1 << n) - 1
    found = []
    for start in range(3, full, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, full), dtype=np.int64)
        ok = (masks & (masks - 1)) != 0
        for v in range(n):
            outside = ((masks >> v) & 1) == 0
            inter = adj_masks[v] & masks
            ok &= ~outside | (inter == 0) | (inter == masks)
        hits = masks[ok]
        if hits.size:
            if first_only:
                return hits[:1].copy()
            found.append(hits)
    if not found:
        return np.empty(0, np.int64)
    return np.concatenate(found)


@njit
def bihomogeneous_masks_loop(out_masks, in_masks, n, first_only):
    full = (1 << n) - 1
    out = np.empty(64, np.int64)
    count = 0
    for mask in range(3, full):
        if (mask & (mask - 1)) == 0:
            continue
        ok = True
        for v in range(n):
            if (mask >> v) & 1:
                continue
            a = out_masks[v] & mask
            b = in_masks[v] & mask
            if (a != 0 and a != mask) or (b != 0 and b != mask):
                ok = False
                break
        if ok:
            if count == out.shape[0]:
                grown = np.empty(2 * count, np.int64)
                grown[:count] = out
                out = grown
            out[count] = mask
            count += 1
            if first_only:
                break
    return out[:count].copy()


def bihomogeneous_masks_numpy(out_masks, in_masks, n, first_only):
    out_masks = np.asarray(out_masks, dtype=np.int64)
    in_masks = np.asarray(in_masks, dtype=np.int64)
    full = (1 << n) - 1
    found = []
    for start in range(3, full, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, full), dtype=np.int64)
        ok = (masks & (masks - 1)) != 0
        for v in range(n):
            outside = ((masks >> v) & 1) == 0
            a = out_masks[v] & masks
            b = in_masks[v] & masks
            good = ((a == 0) | (a == masks)) & ((b == 0) | (b == masks))
            ok &= ~outside | good
        hits = masks[ok]
        if hits.size:
            if first_only:
                return hits[:1].copy()
            found.append(hits)
    if not found:
        return np.empty(0, np.int64)
    return np.concatenate(found)


@njit
def masks_homogeneous_loop(adj_masks, n, masks):
    res = np.empty(masks.shape[0], np.bool_)
    for i in range(masks.shape[0]):
        mask = masks[i]
        ok = True
        for v in range(n):
            if (mask >> v) & 1:
                continue
            inter = adj_masks[v] & mask
            if inter != 0 and inter != mask:
                ok = False
                break
        res[i] = ok
    return res


def masks_homogeneous_numpy(adj_masks, n, masks):
    adj_masks = np.asarray(adj_masks, dtype=np.int64)
    masks = np.asarray(masks, dtype=np.int64)
    ok = np.ones(masks.shape[0], dtype=bool)
    for v in range(n):
        outside = ((masks >> v) & 1) == 0
        inter = adj_masks[v] & masks
        ok &= ~outside | (inter == 0) | (inter == masks)
    return ok


# -- splitter closure -------------------------------------------------------


@njit
def module_closure_loop(adj, seed):
    n = adj.shape[0]
    inx = seed.copy()
    size = 0
    for v in range(n):
        if inx[v]:
            size += 1
    changed = True
    while changed:
        changed = False
        for w in range(n):
            if inx[w]:
                continue
            c = 0
            for x in range(n):
                if inx[x] and adj[w, x]:
                    c += 1
            if c != 0 and c != size:
                inx[w] = True
                size += 1
                changed = True
    return inx


def module_closure_numpy(adj, seed):
    inx = np.array(seed, dtype=bool, copy=True)
    adj_i = adj.astype(np.int64)
    while True:
        cnt = adj_i[:, inx].sum(axis=1)
        size = inx.sum()
        split = ~inx & (cnt > 0) & (cnt < size)
        if not split.any():
            return inx
        inx |= split


@njit
def pair_closures_loop(adj, v):
    n = adj.shape[0]
    res = np.zeros((n, n), np.bool_)
    for u in range(n):
        seed = np.zeros(n, np.bool_)
        seed[v] = True
        seed[u] = True
        res[u] = module_closure_loop(adj, seed)
    return res


def pair_closures_numpy(adj, v):
    n = adj.shape[0]
    res = np.zeros((n, n), dtype=bool)
    for u in range(n):
        seed = np.zeros(n, dtype=bool)
        seed[v] = seed[u] = True
        res[u] = module_closure_numpy(adj, seed)
    return res


# -- cyclic Jacobi eigensolver ----------------------------------------------


@njit
def jacobi_eigenvalues_loop(a, tol, max_sweeps):
    a = a.copy()
    n = a.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j] * a[i, j]
    scale = max(np.sqrt(scale), 1.0)
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if np.sqrt(off) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
    out = np.empty(n)
    for i in range(n):
        out[i] = a[i, i]
    return out


def jacobi_eigenvalues_numpy(a, tol, max_sweeps):
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    scale = max(np.linalg.norm(a), 1.0)
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        if np.sqrt(np.sum(a[iu] ** 2)) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0)), theta)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q]
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
    return np.diag(a).copy()


# -- dispatch ---------------------------------------------------------------

if HAVE_NUMBA:
    homogeneous_masks = homogeneous_masks_loop
    bihomogeneous_masks = bihomogeneous_masks_loop
    masks_homogeneous = masks_homogeneous_loop
    module_closure = module_closure_loop
    pair_closures = pair_closures_loop
    jacobi_eigenvalues = jacobi_eigenvalues_loop
else:
    homogeneous_masks = homogeneous_masks_numpy
    bihomogeneous_masks = bihomogeneous_masks_numpy
    masks_homogeneous = masks_homogeneous_numpy
    module_closure = module_closure_numpy
    pair_closures = pair_closures_numpy
    jacobi_eigenvalues = jacobi_eigenvalues_numpy

BACKEND = "numba" if HAVE_NUMBA else "numpy"
