"""Adjacency spectra and the spectrum of a wreath product."""

from __future__ import annotations

import numpy as np

from . import kernels
from .config import SPECTRUM_MAX_VERTICES
from .errors import CapExceededError, ValidationError

GROUP_TOL = 1e-6
SOLVER_TOL = 1e-13
MAX_SWEEPS = 100


class Spectrum:
    """Eigenvalue multiset, stored sorted descending."""

    __slots__ = ("values",)

    def __init__(self, values):
        v = np.sort(np.asarray(values, dtype=np.float64))[::-1].copy()
        v.setflags(write=False)
        self.values = v

    @property
    def size(self) -> int:
        return len(self.values)

    def grouped(self, tol: float = GROUP_TOL) -> list[tuple[float, int]]:
        """``(value, multiplicity)`` pairs; a gap wider than ``tol`` starts a new group."""
        out: list[list[float]] = []
        prev = None
        for x in self.values:
            if prev is None or prev - x > tol:
                out.append([])
            out[-1].append(x)
            prev = x
        return [(float(np.mean(g)), len(g)) for g in out]

    def multiplicity(self, value: float, tol: float = GROUP_TOL) -> int:
        return int(np.sum(np.abs(self.values - value) <= tol))

    def close_to(self, other: "Spectrum", tol: float = GROUP_TOL) -> bool:
        return self.size == other.size and bool(np.all(np.abs(self.values - other.values) <= tol))

    def to_dict(self) -> dict:
        def clean(x):
            r = round(x)
            return float(r) if abs(x - r) <= GROUP_TOL else round(x, 9)

        return {"eigenvalues": [{"value": clean(v), "multiplicity": m} for v, m in self.grouped()]}

    def __repr__(self):
        return f"Spectrum({self.grouped()})"


def adjacency_spectrum(g, solver: str = "jacobi") -> Spectrum:
    """Eigenvalues of the 0/1 adjacency matrix.

    ``solver="jacobi"`` runs the in-house cyclic Jacobi kernel;
    ``solver="lapack"`` uses ``numpy.linalg.eigvalsh`` as an independent check.
    """
    if g.n > SPECTRUM_MAX_VERTICES:
        raise CapExceededError(f"spectrum capped at {SPECTRUM_MAX_VERTICES} vertices, got {g.n}")
    a = np.ascontiguousarray(g.adj, dtype=np.float64)
    if solver == "jacobi":
        vals = kernels.jacobi_eigenvalues(a, SOLVER_TOL, MAX_SWEEPS)
    elif solver == "lapack":
        vals = np.linalg.eigvalsh(a)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    return Spectrum(vals)


def wreath_spectrum(spec_g: Spectrum, g_size: int, spec_h: Spectrum, h_size: int, r_h: float) -> Spectrum:
    """Spectrum of ``G · H`` for regular ``G`` and ``H``, where ``H`` is ``r_h``-regular.

    ``{r_h + |H| λ : λ in Spec(G)}`` together with ``|G|`` copies of
    ``Spec(H)`` minus one occurrence of ``r_h``.
    """
    if spec_g.size != g_size or spec_h.size != h_size:
        raise ValidationError("spectrum sizes do not match the stated vertex counts")
    hits = np.flatnonzero(np.abs(spec_h.values - r_h) <= GROUP_TOL)
    if not hits.size:
        raise ValidationError(f"degree {r_h} is not an eigenvalue of H", witness=r_h)
    rest = np.delete(spec_h.values, hits[0])
    lifted = r_h + h_size * spec_g.values
    return Spectrum(np.concatenate([lifted, np.tile(rest, g_size)]))


def zero_multiplicity(spec: Spectrum) -> int:
    return spec.multiplicity(0.0)


def zero_multiplicity_check(r, s, cert) -> tuple[bool, int, float]:
    """``(ok, multiplicity of 0, |R|/2)`` for a not-prime ring certificate.

    Only a certificate carrying a homogeneous witness ideal is accepted: the
    ideal turns the graph into ``Q · E_n`` with ``n >= 2``, and the ``E_n``
    factor alone contributes ``|Q|(n-1) >= |R|/2`` zero eigenvalues.
    """
    from .cayley import cayley_graph
    from .ring_cayley import NOT_PRIME, additive_group

    if cert.verdict != NOT_PRIME or cert.witness_ideal is None:
        raise ValidationError("zero-multiplicity check needs a not-prime certificate with a witness ideal")
    spec = adjacency_spectrum(cayley_graph(additive_group(r), s))
    m = zero_multiplicity(spec)
    bound = r.size / 2
    return m >= bound, m, bound
