from fractions import Fraction

import numpy as np
import pytest

from expander_forge import cheeger
from expander_forge._mincut_py import min_ratio_cut as py_min_ratio_cut
from expander_forge.cheeger import (
    GUARD_ENV_VAR,
    _bitmask_inputs,
    boundary_size,
    cheeger_exact,
    cheeger_exact_naive,
    cheeger_upper,
    resolve_guard,
)
from expander_forge.errors import ExpanderForgeError, GuardExceededError
from expander_forge.graph_core import HalfEdgePairing, build_graph, is_connected
from expander_forge.construct import k4_graph, theta_base
from expander_forge.sampler import SampleConfig, sample_graph
from expander_forge.spectra import laplacian_spectrum

STAR = build_graph(HalfEdgePairing(chi=1, n=3, pairs=((1, 4), (2, 5), (3, 6))))


def test_star_certificate():
    cert = cheeger_exact(STAR)
    assert cert.h == 1
    assert len(cert.witness) == 1 and cert.witness[0] != 0
    assert cert.boundary_size == 1
    assert cert.exact


def test_k4_certificate():
    cert = cheeger_exact(k4_graph())
    assert cert.h == 2
    assert len(cert.witness) == 2


def test_theta_certificate():
    cert = cheeger_exact(theta_base())
    assert cert.h == 3
    assert cert.witness == (0,)


def test_certificate_json():
    rep = cheeger_exact(STAR).to_json(STAR)
    assert rep["h_num"] == 1 and rep["h_den"] == 1
    assert rep["omega"] == ["w1"]
    assert rep["exact"] is True


def test_loops_never_cross():
    g = build_graph(HalfEdgePairing(chi=1, n=1, pairs=((1, 4), (2, 3))))
    cert = cheeger_exact(g)
    assert cert.h == 1  # pendant edge only; the loop stays inside
    assert boundary_size(g, {0}) == 1


def _connected_samples(combos, trials, seed):
    out = []
    for chi, n in combos:
        cfg = SampleConfig(chi=chi, n=n, trials=trials, seed=seed)
        for t in range(trials):
            g = sample_graph(cfg, t)
            if is_connected(g):
                out.append(g)
    return out


SAMPLES_12 = _connected_samples(
    [(2, 2), (3, 1), (3, 3), (4, 0), (4, 2), (2, 6), (5, 1), (4, 4), (3, 5)],
    trials=20,
    seed=17,
)


def test_pruned_search_matches_naive_oracle():
    """Validates the both-sides-connected pruning on every sample <= 12."""
    checked = 0
    for g in SAMPLES_12:
        if g.num_vertices > 12:
            continue
        pruned = cheeger_exact(g)
        naive = cheeger_exact_naive(g)
        assert pruned.h == naive.h, (g.edges, pruned, naive)
        assert boundary_size(g, set(pruned.witness)) == pruned.boundary_size
        assert Fraction(pruned.boundary_size, len(pruned.witness)) == pruned.h
        assert 2 * len(pruned.witness) <= g.num_vertices
        checked += 1
    assert checked >= 100


@pytest.mark.skipif(
    not cheeger.HAVE_COMPILED_KERNEL, reason="compiled kernel not built"
)
def test_compiled_and_python_kernels_identical():
    from expander_forge import _mincut_core

    for g in SAMPLES_12[:120]:
        adj, mult = _bitmask_inputs(g)
        nv = g.num_vertices
        out_c = _mincut_core.min_ratio_cut(adj, mult, nv, nv // 2)
        out_py = py_min_ratio_cut(adj, mult, nv, nv // 2)
        assert out_c == out_py


def test_upper_bound_sound_and_tight_on_star():
    up = cheeger_upper(STAR)
    assert up.h == 1 and not up.exact
    for g in SAMPLES_12[:80]:
        assert cheeger_upper(g).h >= cheeger_exact(g).h
        assert cheeger_upper(g, sweep=False).h >= cheeger_exact(g).h


def test_h_at_most_degree_bound():
    for g in SAMPLES_12[:60]:
        assert cheeger_exact(g).h <= min(g.degrees())
    assert cheeger_exact(k4_graph()).h <= 3


def test_cheeger_inequality_spot_check():
    for g in SAMPLES_12[:60]:
        h = float(cheeger_exact(g).h)
        lam1 = laplacian_spectrum(g).lambda1
        assert lam1 >= h * h / 18 - 1e-9


def test_guard_and_env_override(monkeypatch):
    monkeypatch.delenv(GUARD_ENV_VAR, raising=False)
    assert resolve_guard(None) == 24
    assert resolve_guard(30) == 30
    monkeypatch.setenv(GUARD_ENV_VAR, "10")
    assert resolve_guard(None) == 10
    big = _connected_samples([(8, 4)], 10, seed=2)[0]
    with pytest.raises(GuardExceededError):
        cheeger_exact(big)  # 12 vertices > env guard 10
    monkeypatch.delenv(GUARD_ENV_VAR)
    assert cheeger_exact(big).h > 0


def test_disconnected_rejected():
    cfg = SampleConfig(chi=6, n=4, trials=100, seed=3)
    for t in range(cfg.trials):
        g = sample_graph(cfg, t)
        if not is_connected(g):
            with pytest.raises(ExpanderForgeError):
                cheeger_exact(g)
            return
    pytest.fail("no disconnected sample found")


def test_witness_tie_break_smallest_then_lex():
    # theta graph: both singletons give ratio 3; vertex 0 wins lex
    cert = cheeger_exact(theta_base())
    assert cert.witness == (0,)
    # star: all three leaves give ratio 1; leaf with smallest id wins
    cert = cheeger_exact(STAR)
    assert cert.witness == (1,)
