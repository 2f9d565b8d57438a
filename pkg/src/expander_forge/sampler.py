"""Uniform sampling and exhaustive enumeration of the good-partition family.

Counting formula: |F_{chi,n}| = n! * C(3*chi, n) * N((3*chi - n)/2) with
N(m) = (2m)!/(m! 2^m).  The sampler factors this exactly: stage (i) draws a
uniform injective assignment of the n boundary labels onto distinct interior
labels, stage (ii) a uniform perfect matching on the remaining interior
labels, so the output is exactly uniform on the family.

RNG contract: the generator is numpy PCG64.  Trial t of a run with seed s
uses ``default_rng(SeedSequence(entropy=s, spawn_key=(t,)))``; parallel and
serial execution therefore produce identical trial streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import GuardExceededError
from .graph_core import HalfEdgePairing, _UnionFind, build_graph, check_parity

ENUM_GUARD = 10**7


@dataclass(frozen=True)
class SampleConfig:
    chi: int
    n: int
    trials: int
    seed: int

    def __post_init__(self):
        check_parity(self.chi, self.n)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class ConnectivityEstimate:
    fraction: Fraction
    ci_low: float
    ci_high: float
    trials: int


def matching_count(m: int) -> int:
    """Number of perfect matchings on 2m labeled points: (2m)!/(m! 2^m)."""
    return math.factorial(2 * m) // (math.factorial(m) * 2**m)


def count_family(chi: int, n: int) -> int:
    """Exact size of the good-partition family F_{chi,n}."""
    check_parity(chi, n)
    return (
        math.factorial(n)
        * math.comb(3 * chi, n)
        * matching_count((3 * chi - n) // 2)
    )


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """The per-trial generator mandated by the RNG contract."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(trial_index,))
    )


def _sample_label_pairs(
    chi: int, n: int, rng: np.random.Generator
) -> list[tuple[int, int]]:
    """Draw the label pairs of a uniform good partition (labels 1-based)."""
    boundary_targets = rng.choice(3 * chi, size=n, replace=False)
    pairs = [(int(t) + 1, 3 * chi + j + 1) for j, t in enumerate(boundary_targets)]
    taken = set(int(t) for t in boundary_targets)
    remaining = np.array(
        [l for l in range(3 * chi) if l not in taken], dtype=np.int64
    )
    rng.shuffle(remaining)
    it = iter(remaining)
    for a, b in zip(it, it):
        pairs.append((int(a) + 1, int(b) + 1))
    return pairs


def sample_partition(cfg: SampleConfig, trial_index: int) -> HalfEdgePairing:
    """Uniformly distributed good partition, deterministic in
    (cfg.seed, trial_index)."""
    rng = trial_rng(cfg.seed, trial_index)
    return HalfEdgePairing(
        chi=cfg.chi, n=cfg.n, pairs=tuple(_sample_label_pairs(cfg.chi, cfg.n, rng))
    )


def sample_graph(cfg: SampleConfig, trial_index: int):
    return build_graph(sample_partition(cfg, trial_index))


def _trial_is_connected(chi: int, n: int, rng: np.random.Generator) -> bool:
    """Connectivity of one sampled graph without building a MultiGraph."""
    uf = _UnionFind(chi + n)
    for i, j in _sample_label_pairs(chi, n, rng):
        u = (i - 1) // 3 if i <= 3 * chi else chi + (i - 3 * chi - 1)
        v = (j - 1) // 3 if j <= 3 * chi else chi + (j - 3 * chi - 1)
        if u != v:
            uf.union(u, v)
    return uf.count == 1


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054):
    """95% Wilson score interval; stable near fractions 0 and 1."""
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (
        z * math.sqrt(p * (1.0 - p) / trials + z * z / (4 * trials * trials)) / denom
    )
    return max(0.0, center - half), min(1.0, center + half)


def estimate_connectivity(cfg: SampleConfig) -> ConnectivityEstimate:
    """Monte Carlo connected fraction with a 95% Wilson interval."""
    hits = 0
    for t in range(cfg.trials):
        if _trial_is_connected(cfg.chi, cfg.n, trial_rng(cfg.seed, t)):
            hits += 1
    lo, hi = wilson_interval(hits, cfg.trials)
    return ConnectivityEstimate(
        fraction=Fraction(hits, cfg.trials), ci_low=lo, ci_high=hi, trials=cfg.trials
    )


def enumerate_family(
    chi: int, n: int, guard: int | None = ENUM_GUARD
) -> Iterator[HalfEdgePairing]:
    """Yield every good partition of F_{chi,n} exactly once.

    Enumeration order is deterministic: the smallest unmatched label is
    paired with each admissible partner in increasing order.  `guard`
    bounds count_family; pass None to stream an over-guard family lazily.
    """
    check_parity(chi, n)
    if guard is not None and count_family(chi, n) > guard:
        raise GuardExceededError(
            f"count_family({chi},{n}) = {count_family(chi, n)} exceeds guard {guard}"
        )
    total = 3 * chi + n

    def rec(unmatched: list[int], acc: list[tuple[int, int]]):
        if not unmatched:
            yield HalfEdgePairing(chi=chi, n=n, pairs=tuple(acc))
            return
        i = unmatched[0]
        if i > 3 * chi:
            return  # only boundary labels left: any pair would be bad
        rest = unmatched[1:]
        for k, j in enumerate(rest):
            acc.append((i, j))
            yield from rec(rest[:k] + rest[k + 1 :], acc)
            acc.pop()

    yield from rec(list(range(1, total + 1)), [])


def exact_connectivity_fraction(chi: int, n: int, guard: int = ENUM_GUARD) -> Fraction:
    """Connected fraction of the family by exhaustive enumeration."""
    total = 0
    connected = 0
    for p in enumerate_family(chi, n, guard=guard):
        total += 1
        uf = _UnionFind(chi + n)
        for i, j in p.pairs:
            u = (i - 1) // 3 if i <= 3 * chi else chi + (i - 3 * chi - 1)
            v = (j - 1) // 3 if j <= 3 * chi else chi + (j - 3 * chi - 1)
            if u != v:
                uf.union(u, v)
        if uf.count == 1:
            connected += 1
    return Fraction(connected, total)
