"""Normalized-Laplacian and Steklov spectra.

The Laplacian spectrum is that of I - D^{-1/2} A D^{-1/2}, with adjacency
counting edge multiplicity and a loop adding 2 to its diagonal entry and to
the degree.  The Steklov spectrum is computed through the
Dirichlet-to-Neumann reduction: the Schur complement
L_BB - L_BI L_II^{-1} L_IB of the combinatorial Laplacian L = D - A maps
boundary data to the outward derivative of its harmonic extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import ExpanderForgeError, SolverError
from .graph_core import BOUNDARY, MultiGraph, is_connected, topology

DEFAULT_TOL = 1e-9
DENSE_LIMIT = 2000


@dataclass(frozen=True)
class SpectralReport:
    laplacian_eigs: tuple[float, ...] | None
    lambda1: float | None
    steklov_eigs: tuple[float, ...] | None
    sigma1: float | None
    tol: float = DEFAULT_TOL


def _adjacency(g: MultiGraph) -> np.ndarray:
    a = np.zeros((g.num_vertices, g.num_vertices))
    for u, v in g.edges:
        if u == v:
            a[u, u] += 2.0
        else:
            a[u, v] += 1.0
            a[v, u] += 1.0
    return a


def normalized_laplacian(g: MultiGraph) -> np.ndarray:
    a = _adjacency(g)
    deg = a.sum(axis=1)
    if np.any(deg == 0):
        raise ExpanderForgeError("isolated vertex (degree 0)")
    dinv = 1.0 / np.sqrt(deg)
    return np.eye(g.num_vertices) - dinv[:, None] * a * dinv[None, :]


def combinatorial_laplacian(g: MultiGraph) -> np.ndarray:
    a = _adjacency(g)
    return np.diag(a.sum(axis=1)) - a


def laplacian_spectrum(g: MultiGraph, tol: float = DEFAULT_TOL) -> SpectralReport:
    """Sorted normalized-Laplacian spectrum; lambda1 is entry index 1.

    Dense symmetric eigendecomposition up to DENSE_LIMIT vertices; larger
    graphs get only the two extremal-low eigenvalues via Lanczos on the
    flipped operator 2I - L.
    """
    if g.num_vertices <= DENSE_LIMIT:
        lap = normalized_laplacian(g)
        eigs = np.linalg.eigvalsh(lap)
        eigs.sort()
        return SpectralReport(
            laplacian_eigs=tuple(float(x) for x in eigs),
            lambda1=float(eigs[1]) if len(eigs) > 1 else None,
            steklov_eigs=None,
            sigma1=None,
            tol=tol,
        )
    lam1 = _lambda1_iterative(g, tol)
    return SpectralReport(
        laplacian_eigs=None, lambda1=lam1, steklov_eigs=None, sigma1=None, tol=tol
    )


def _lambda1_iterative(g: MultiGraph, tol: float) -> float:
    nv = g.num_vertices
    a = scipy.sparse.lil_matrix((nv, nv))
    for u, v in g.edges:
        if u == v:
            a[u, u] += 2.0
        else:
            a[u, v] += 1.0
            a[v, u] += 1.0
    a = a.tocsr()
    deg = np.asarray(a.sum(axis=1)).ravel()
    if np.any(deg == 0):
        raise ExpanderForgeError("isolated vertex (degree 0)")
    dinv = scipy.sparse.diags(1.0 / np.sqrt(deg))
    lap = scipy.sparse.identity(nv) - dinv @ a @ dinv
    flipped = 2.0 * scipy.sparse.identity(nv) - lap
    vals = scipy.sparse.linalg.eigsh(
        flipped, k=2, which="LA", return_eigenvectors=False, tol=tol
    )
    return float(2.0 - np.sort(vals)[0])


def _split_interior_boundary(g: MultiGraph) -> tuple[list[int], list[int]]:
    interior = g.interior_indices()
    boundary = g.boundary_indices()
    return interior, boundary


def steklov_spectrum(g: MultiGraph, tol: float = DEFAULT_TOL) -> SpectralReport:
    """Steklov eigenvalues via the Schur complement of L = D - A.

    Requires a connected graph with at least one boundary vertex.  The
    interior Dirichlet block is positive definite for such graphs; a failed
    Cholesky factorization is reported as an internal inconsistency.
    """
    if not is_connected(g):
        raise ExpanderForgeError("Steklov spectrum requires a connected graph")
    interior, boundary = _split_interior_boundary(g)
    if not boundary:
        raise ExpanderForgeError("Steklov spectrum requires n >= 1")
    lap = combinatorial_laplacian(g)
    ii = np.ix_(interior, interior)
    ib = np.ix_(interior, boundary)
    bb = np.ix_(boundary, boundary)
    if interior:
        try:
            cho = scipy.linalg.cho_factor(lap[ii])
        except np.linalg.LinAlgError as exc:
            raise SolverError("interior Dirichlet block not SPD") from exc
        schur = lap[bb] - lap[ib].T @ scipy.linalg.cho_solve(cho, lap[ib])
    else:
        schur = lap[bb]
    eigs = np.linalg.eigvalsh((schur + schur.T) / 2.0)
    eigs.sort()
    if abs(eigs[0]) > tol * max(1.0, abs(eigs[-1])):
        raise SolverError(f"sigma_0 = {eigs[0]} not 0 within tol")
    sigma1 = float(eigs[1]) if len(eigs) > 1 else None
    if sigma1 is not None and sigma1 <= tol:
        raise SolverError(
            f"sigma_1 = {sigma1} <= tol on a connected graph (solver failure)"
        )
    return SpectralReport(
        laplacian_eigs=None,
        lambda1=None,
        steklov_eigs=tuple(float(x) for x in eigs),
        sigma1=sigma1,
        tol=tol,
    )


def harmonic_extension(g: MultiGraph, boundary_values: Sequence[float]) -> np.ndarray:
    """Extend boundary data to a function harmonic at interior vertices."""
    interior, boundary = _split_interior_boundary(g)
    if len(boundary_values) != len(boundary):
        raise ExpanderForgeError("boundary data length mismatch")
    f = np.zeros(g.num_vertices)
    fb = np.asarray(boundary_values, dtype=float)
    for i, b in enumerate(boundary):
        f[b] = fb[i]
    if interior:
        lap = combinatorial_laplacian(g)
        ii = np.ix_(interior, interior)
        ib = np.ix_(interior, boundary)
        cho = scipy.linalg.cho_factor(lap[ii])
        f[interior] = scipy.linalg.cho_solve(cho, -lap[ib] @ fb)
    return f


def rayleigh_quotient(g: MultiGraph, f: Sequence[float]) -> float:
    """Edge energy over the squared boundary norm; loops contribute 0."""
    fv = np.asarray(f, dtype=float)
    if len(fv) != g.num_vertices:
        raise ExpanderForgeError("function length mismatch")
    boundary = g.boundary_indices()
    denom = float(np.sum(fv[boundary] ** 2))
    if denom <= 0.0:
        raise ExpanderForgeError("zero boundary norm")
    num = 0.0
    for u, v in g.edges:
        d = fv[u] - fv[v]
        num += d * d
    return num / denom


def verify_domination(g: MultiGraph, tol: float = DEFAULT_TOL):
    """Check sigma_i >= lambda_i - tol for 0 <= i < |dG|.

    Returns (ok, report) where report carries both spectra and the worst
    margin encountered.
    """
    if not is_connected(g):
        raise ExpanderForgeError("domination check requires a connected graph")
    boundary = g.boundary_indices()
    if not boundary:
        raise ExpanderForgeError("domination check requires n >= 1")
    lam = laplacian_spectrum(g, tol=tol).laplacian_eigs
    sig = steklov_spectrum(g, tol=tol).steklov_eigs
    margins = [sig[i] - lam[i] for i in range(len(sig))]
    ok = all(m >= -tol for m in margins)
    return ok, {
        "lambda": lam[: len(sig)],
        "sigma": sig,
        "min_margin": min(margins),
        "tol": tol,
    }


def report_json(g: MultiGraph, tol: float = DEFAULT_TOL) -> dict:
    """The JSON spectral report emitted by the CLI."""
    connected = is_connected(g)
    top = topology(g)
    lap = laplacian_spectrum(g, tol=tol)
    sigma: tuple[float, ...] | None = None
    sigma1 = None
    if connected and g.n >= 1:
        stek = steklov_spectrum(g, tol=tol)
        sigma, sigma1 = stek.steklov_eigs, stek.sigma1
    return {
        "chi": g.chi,
        "n": g.n,
        "genus": top.genus,
        "connected": connected,
        "lambda": list(lap.laplacian_eigs) if lap.laplacian_eigs else [],
        "sigma": list(sigma) if sigma else [],
        "lambda1": lap.lambda1,
        "sigma1": sigma1,
        "tol": tol,
    }
