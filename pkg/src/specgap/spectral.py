"""Spectra, clustering into components, and pseudospectra.

Everything is dense and blockwise; the spectrum of a block operator is the
union over blocks.  Spectra of finite matrices are finite sets, so
"connected components" means single-linkage clusters at a caller-chosen
threshold, and the boundary of the spectrum is the spectrum itself (the
finite-dimensional surrogate used throughout this package).
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import BlockOperator, Projection, validate_projection
from .errors import (
    ConvergenceFailure,
    EmptySpectralWindow,
    NotPositive,
)

__all__ = [
    "eigenvalues",
    "SpectrumReport",
    "cluster_points",
    "spectrum_components",
    "rightmost_boundary_point",
    "spectral_projection_below",
    "min_singular_value",
    "GridSpec",
    "PseudospectrumGrid",
    "pseudospectrum_grid",
    "write_spectrum_csv",
    "write_pseudospectrum_csv",
]


def eigenvalues(T: BlockOperator) -> np.ndarray:
    """All eigenvalues (with multiplicity), pooled over blocks.

    Sorted lexicographically by (Re, Im) so equal inputs give equal output.
    """
    vals = []
    for sid, b in T.summands:
        try:
            vals.append(scipy.linalg.eigvals(b))
        except Exception as exc:  # LinAlgError and friends
            raise ConvergenceFailure(f"eigensolver failed on summand {sid}: {exc}")
    out = np.concatenate(vals)
    order = np.lexsort((out.imag, out.real))
    return out[order]


def cluster_points(points: np.ndarray, threshold: float) -> np.ndarray:
    """Single-linkage cluster labels: points within ``threshold`` link up."""
    pts = np.asarray(points, dtype=complex)
    n = len(pts)
    parent = np.arange(n)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    dist = np.abs(pts[:, None] - pts[None, :])
    for i, j in zip(*np.nonzero(dist <= threshold)):
        if i < j:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    roots = np.array([find(i) for i in range(n)])
    _, labels = np.unique(roots, return_inverse=True)
    return labels


@dataclass(frozen=True)
class SpectrumReport:
    """Clustered spectrum: list of eigenvalue clusters plus the realized gap.

    ``gap`` is the smallest distance between points of different clusters
    (``inf`` for a single cluster); it always exceeds the linking threshold.
    """

    eigenvalues: tuple
    components: tuple       # tuple of tuples of eigenvalues
    labels: tuple
    threshold: float
    gap: float
    method: str = "exact_eigen"

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def disconnected(self) -> bool:
        return len(self.components) >= 2


def spectrum_components(points, threshold: float, method: str = "exact_eigen") -> SpectrumReport:
    """Cluster spectrum points at a threshold; >= 2 clusters means disconnected."""
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        raise EmptySpectralWindow("no spectrum points to cluster")
    labels = cluster_points(pts, threshold)
    comps = tuple(tuple(pts[labels == c]) for c in range(labels.max() + 1))
    if labels.max() == 0:
        gap = np.inf
    else:
        dist = np.abs(pts[:, None] - pts[None, :])
        inter = dist[labels[:, None] != labels[None, :]]
        gap = float(inter.min())
    return SpectrumReport(eigenvalues=tuple(pts), components=comps,
                          labels=tuple(int(l) for l in labels),
                          threshold=float(threshold), gap=gap, method=method)


def rightmost_boundary_point(T: BlockOperator) -> complex:
    """The spectrum point with maximal real part; ties broken by maximal
    imaginary part.  (In finite dimensions every spectrum point is a
    boundary point.)"""
    ev = eigenvalues(T)
    return complex(ev[-1])  # lexsorted by (Re, Im)


def spectral_projection_below(A: BlockOperator, threshold: float,
                              tol: float = 1e-9) -> Projection:
    """Spectral projection of a positive operator onto [0, threshold].

    ``A`` must be Hermitian with spectrum >= -tol; raises
    :class:`~specgap.errors.NotPositive` otherwise, and
    :class:`~specgap.errors.EmptySpectralWindow` when no eigenvalue lies
    below the threshold.  The projection commutes with ``A`` exactly (it is
    assembled from eigenvectors of the symmetrized blocks).
    """
    scale = max(A.norm(), 1.0)
    blocks = []
    hit = False
    for sid, b in A.summands:
        herm = np.linalg.norm(b - b.conj().T, 2)
        if herm > tol * scale:
            raise NotPositive(f"summand {sid} is not Hermitian: ||A-A*||={herm:.3e}")
        evals, vecs = np.linalg.eigh((b + b.conj().T) / 2.0)
        if evals[0] < -tol * scale:
            raise NotPositive(f"summand {sid} has eigenvalue {evals[0]:.3e} < -tol")
        sel = vecs[:, evals <= threshold]
        if sel.shape[1]:
            hit = True
            blocks.append((sid, sel @ sel.conj().T))
        else:
            blocks.append((sid, np.zeros_like(b)))
    if not hit:
        raise EmptySpectralWindow(f"no spectrum of A in [0, {threshold}]")
    return validate_projection(BlockOperator(tuple(blocks)), tol=max(tol, 1e-12))


def min_singular_value(T: BlockOperator, lam: complex = 0.0) -> float:
    """Smallest singular value of T - lam*I (block diagonal: min over blocks)."""
    best = np.inf
    for _, b in T.summands:
        shifted = b - complex(lam) * np.eye(b.shape[0])
        s = np.linalg.svd(shifted, compute_uv=False)
        best = min(best, float(s[-1]))
    return best


@dataclass(frozen=True)
class GridSpec:
    """Rectangle in the complex plane sampled on an nx-by-ny lattice."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int = 81
    ny: int = 81

    def __post_init__(self):
        if self.re_min >= self.re_max or self.im_min >= self.im_max:
            raise ValueError("degenerate grid rectangle")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 points per axis")

    def res(self):
        return np.linspace(self.re_min, self.re_max, self.nx)

    def ims(self):
        return np.linspace(self.im_min, self.im_max, self.ny)


@dataclass(frozen=True)
class PseudospectrumGrid:
    res: tuple
    ims: tuple
    sigma_min: tuple      # row-major, ims outer / res inner
    eps: float

    def marked(self) -> np.ndarray:
        return np.asarray(self.sigma_min) <= self.eps

    @property
    def marked_fraction(self) -> float:
        m = self.marked()
        return float(np.count_nonzero(m)) / m.size


def pseudospectrum_grid(T: BlockOperator, eps: float, grid: GridSpec,
                        threads: int = 1) -> PseudospectrumGrid:
    """sigma_min(T - zI) on the grid; a point is in the eps-pseudospectrum
    when that value is <= eps.

    Results are assembled row-by-index, so the output is identical for any
    thread count.
    """
    res = grid.res()
    ims = grid.ims()
    blocks = [np.asarray(b) for _, b in T.summands]
    eyes = [np.eye(b.shape[0]) for b in blocks]

    def row(iy):
        out = np.empty(len(res))
        for ix, x in enumerate(res):
            z = complex(x, ims[iy])
            out[ix] = min(
                np.linalg.svd(b - z * e, compute_uv=False)[-1]
                for b, e in zip(blocks, eyes)
            )
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, range(len(ims))))
    else:
        rows = [row(iy) for iy in range(len(ims))]
    sig = np.vstack(rows)
    return PseudospectrumGrid(res=tuple(float(x) for x in res),
                              ims=tuple(float(y) for y in ims),
                              sigma_min=tuple(tuple(float(v) for v in r) for r in sig),
                              eps=float(eps))


def write_spectrum_csv(report: SpectrumReport, path):
    """Columns: re, im, component_id."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "component_id"])
        for z, label in zip(report.eigenvalues, report.labels):
            w.writerow([repr(z.real), repr(z.imag), label])


def write_pseudospectrum_csv(ps: PseudospectrumGrid, path):
    """Columns: re, im, marked (1 when sigma_min <= eps)."""
    marked = ps.marked()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "marked"])
        for iy, y in enumerate(ps.ims):
            for ix, x in enumerate(ps.res):
                w.writerow([repr(float(x)), repr(float(y)), int(marked[iy, ix])])
