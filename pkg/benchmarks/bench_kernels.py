"""Time the numba kernels against their pure-numpy twins on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

The numba column is skipped when numba is unavailable or disabled with
CAYLEY_DISABLE_NUMBA=1. Every case also checks that both backends agree.
"""

import argparse
import json
import time

import numpy as np

from cayleyprime import kernels
from cayleyprime._accel import HAVE_NUMBA
from cayleyprime.cayley import cayley_graph
from cayleyprime.group import build_cyclic


def paley(q):
    return cayley_graph(build_cyclic(q), {x * x % q for x in range(1, q)})


def masks(adj):
    return np.array([int(sum(1 << int(j) for j in np.flatnonzero(row))) for row in adj], dtype=np.int64)


def cases():
    adj61 = np.ascontiguousarray(paley(61).adj)
    rng = np.random.default_rng(0)
    upper = np.triu(rng.integers(0, 2, size=(20, 20)), 1)
    rand20 = upper + upper.T
    out = []
    for n in (64, 128, 256):
        m = rng.integers(0, 2, size=(n, n)).astype(np.float64)
        sym = np.triu(m, 1) + np.triu(m, 1).T
        out.append((f"jacobi_eigenvalues n={n}", "jacobi_eigenvalues", (sym, 1e-13, 100)))
    out.insert(0, ("pair_closures Paley(61), all pairs from 0", "pair_closures", (adj61, 0)))
    out.insert(0, ("homogeneous_masks random G(20, 1/2), 2^20 subsets", "homogeneous_masks", (masks(rand20), 20, False)))
    return out


def best_of(fn, args, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), result


def same(a, b):
    if isinstance(a, np.ndarray) and a.dtype.kind == "f":
        return np.allclose(np.sort(a), np.sort(b), atol=1e-8)
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the rows as JSON")
    args = ap.parse_args()

    rows = []
    for label, name, fargs in cases():
        np_fn = getattr(kernels, f"{name}_numpy")
        t_np, r_np = best_of(np_fn, fargs, args.repeat)
        row = {"case": label, "numpy_s": t_np, "numba_s": None, "speedup": None, "agree": None}
        if HAVE_NUMBA:
            nb_fn = getattr(kernels, f"{name}_loop")
            nb_fn(*fargs)  # compile or load from cache outside the timing
            t_nb, r_nb = best_of(nb_fn, fargs, args.repeat)
            row.update(numba_s=t_nb, speedup=t_np / t_nb, agree=bool(same(r_np, r_nb)))
        rows.append(row)

    print("| case | numpy (s) | numba (s) | speedup | agree |\n|---|---|---|---|---|")
    for r in rows:
        nb = "n/a" if r["numba_s"] is None else f"{r['numba_s']:.4f}"
        sp = "n/a" if r["speedup"] is None else f"{r['speedup']:.1f}x"
        print(f"| {r['case']} | {r['numpy_s']:.4f} | {nb} | {sp} | {r['agree']} |")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
