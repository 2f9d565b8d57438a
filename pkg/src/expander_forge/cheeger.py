"""Exact Cheeger constants with witnesses, plus a spectral sweep upper bound.

The exact search enumerates only subsets whose two sides are both connected
(the connected-realizer reduction), using a compiled bitmask kernel when the
extension was built and a pure-Python twin otherwise.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ExpanderForgeError, GuardExceededError
from .graph_core import MultiGraph, is_connected
from .spectra import normalized_laplacian

try:  # compiled kernel, built by setup.py
    from . import _mincut_core as _kernel

    HAVE_COMPILED_KERNEL = True
except ImportError:  # pragma: no cover - depends on build environment
    from . import _mincut_py as _kernel

    HAVE_COMPILED_KERNEL = False

DEFAULT_GUARD = 24
GUARD_ENV_VAR = "EXPANDER_FORGE_GUARD"


def resolve_guard(guard: int | None = None) -> int:
    if guard is not None:
        return guard
    env = os.environ.get(GUARD_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_GUARD


@dataclass(frozen=True)
class CheegerCertificate:
    h: Fraction
    witness: tuple[int, ...]
    boundary_size: int
    exact: bool

    def to_json(self, g: MultiGraph) -> dict:
        return {
            "h_num": self.h.numerator,
            "h_den": self.h.denominator,
            "omega": [g.names[v] for v in self.witness],
            "boundary": self.boundary_size,
            "exact": self.exact,
        }


def _bitmask_inputs(g: MultiGraph):
    """Neighbor masks and non-loop multiplicity matrix for the kernel."""
    nv = g.num_vertices
    adj = np.zeros(nv, dtype=np.uint64)
    mult = np.zeros((nv, nv), dtype=np.int64)
    for u, v in g.edges:
        if u == v:
            continue  # loops never cross a cut
        adj[u] |= np.uint64(1 << v)
        adj[v] |= np.uint64(1 << u)
        mult[u, v] += 1
        mult[v, u] += 1
    return adj, mult


def boundary_size(g: MultiGraph, subset: set[int] | frozenset[int]) -> int:
    """|edges leaving subset| with multiplicity; loops never count."""
    s = 0
    for u, v in g.edges:
        if u != v and (u in subset) != (v in subset):
            s += 1
    return s


def cheeger_exact(g: MultiGraph, guard: int | None = None) -> CheegerCertificate:
    """Minimum of |boundary(S)|/|S| over subsets with |S| <= |V|/2.

    By the connected-realizer reduction only subsets with both sides
    connected are enumerated.  Ties break toward the smallest subset, then
    lexicographically smallest vertex indices.
    """
    if not is_connected(g):
        raise ExpanderForgeError("cheeger_exact requires a connected graph")
    limit = resolve_guard(guard)
    nv = g.num_vertices
    if nv > limit:
        raise GuardExceededError(f"|V| = {nv} exceeds exact-search guard {limit}")
    adj, mult = _bitmask_inputs(g)
    s, k, mask, _visited = _kernel.min_ratio_cut(adj, mult, nv, nv // 2)
    if k == 0:
        raise ExpanderForgeError("empty search (single-vertex graph?)")
    witness = tuple(v for v in range(nv) if (mask >> v) & 1)
    return CheegerCertificate(
        h=Fraction(s, k), witness=witness, boundary_size=s, exact=True
    )


def cheeger_exact_naive(g: MultiGraph, guard: int = 12) -> CheegerCertificate:
    """Definition-level brute force over all subsets, no connectivity
    pruning.  Test oracle for the pruned search; |V| <= guard."""
    if not is_connected(g):
        raise ExpanderForgeError("requires a connected graph")
    nv = g.num_vertices
    if nv > guard:
        raise GuardExceededError(f"|V| = {nv} exceeds naive guard {guard}")
    half = nv // 2

    def lex_less(a: int, b: int) -> bool:
        # a precedes b iff a contains the lowest index where they differ
        d = a ^ b
        return d != 0 and (a & (d & -d)) != 0

    best: tuple[int, int, int] | None = None  # (s, k, mask)
    for mask in range(1, 1 << nv):
        members = [v for v in range(nv) if (mask >> v) & 1]
        if len(members) > half:
            continue
        s = boundary_size(g, set(members))
        k = len(members)
        if (
            best is None
            or s * best[1] < best[0] * k
            or (s * best[1] == best[0] * k and k < best[1])
            or (s * best[1] == best[0] * k and k == best[1] and lex_less(mask, best[2]))
        ):
            best = (s, k, mask)
    assert best is not None
    witness = tuple(v for v in range(nv) if (best[2] >> v) & 1)
    return CheegerCertificate(
        h=Fraction(best[0], best[1]),
        witness=witness,
        boundary_size=best[0],
        exact=True,
    )


def cheeger_upper(g: MultiGraph, sweep: bool = True) -> CheegerCertificate:
    """Upper bound from the best prefix cut of the Fiedler-style ordering.

    Orders vertices by the degree-rescaled eigenvector of the second
    normalized-Laplacian eigenvalue and sweeps all prefixes; with
    sweep=False only single-vertex cuts are tried.  Always >= h(G).
    """
    if not is_connected(g):
        raise ExpanderForgeError("cheeger_upper requires a connected graph")
    nv = g.num_vertices
    if nv < 2:
        raise ExpanderForgeError("need at least 2 vertices")
    if sweep:
        lap = normalized_laplacian(g)
        eigvals, eigvecs = np.linalg.eigh(lap)
        fiedler = eigvecs[:, np.argsort(eigvals)[1]]
        deg = np.array(g.degrees(), dtype=float)
        order = np.argsort(fiedler / np.sqrt(deg), kind="stable")
        prefixes = [set(int(v) for v in order[:k]) for k in range(1, nv)]
    else:
        prefixes = [{v} for v in range(nv)]

    best: tuple[int, int, tuple[int, ...]] | None = None
    for subset in prefixes:
        side = subset if len(subset) <= nv // 2 else set(range(nv)) - subset
        if not side or len(side) > nv // 2:
            continue
        s = boundary_size(g, side)
        k = len(side)
        if best is None or s * best[1] < best[0] * k:
            best = (s, k, tuple(sorted(side)))
    assert best is not None
    return CheegerCertificate(
        h=Fraction(best[0], best[1]),
        witness=best[2],
        boundary_size=best[0],
        exact=False,
    )
