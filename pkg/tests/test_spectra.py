import math

import numpy as np
import pytest

from expander_forge.errors import ExpanderForgeError
from expander_forge.graph_core import (
    BOUNDARY,
    INTERIOR,
    HalfEdgePairing,
    MultiGraph,
    build_graph,
    is_connected,
)
from expander_forge.sampler import SampleConfig, sample_graph
from expander_forge.spectra import (
    harmonic_extension,
    laplacian_spectrum,
    rayleigh_quotient,
    report_json,
    steklov_spectrum,
    verify_domination,
)

TOL = 1e-9

STAR = build_graph(HalfEdgePairing(chi=1, n=3, pairs=((1, 4), (2, 5), (3, 6))))
THETA = build_graph(HalfEdgePairing(chi=2, n=0, pairs=((1, 4), (2, 5), (3, 6))))
LOOP_PENDANT = build_graph(HalfEdgePairing(chi=1, n=1, pairs=((1, 4), (2, 3))))


def star_graph(leaves: int) -> MultiGraph:
    names = ("v1",) + tuple(f"w{j}" for j in range(1, leaves + 1))
    roles = (INTERIOR,) + (BOUNDARY,) * leaves
    edges = tuple((0, j) for j in range(1, leaves + 1))
    return MultiGraph(names=names, roles=roles, edges=edges)


def test_star_laplacian_closed_form():
    eigs = laplacian_spectrum(STAR).laplacian_eigs
    assert np.allclose(eigs, [0.0, 1.0, 1.0, 2.0], atol=TOL)


def test_theta_laplacian_closed_form():
    rep = laplacian_spectrum(THETA)
    assert np.allclose(rep.laplacian_eigs, [0.0, 2.0], atol=TOL)
    assert abs(rep.lambda1 - 2.0) < TOL


def test_loop_pendant_laplacian_closed_form():
    rep = laplacian_spectrum(LOOP_PENDANT)
    assert np.allclose(rep.laplacian_eigs, [0.0, 4.0 / 3.0], atol=TOL)


def test_star_steklov_closed_form():
    rep = steklov_spectrum(STAR)
    assert np.allclose(rep.steklov_eigs, [0.0, 1.0, 1.0], atol=TOL)
    assert abs(rep.sigma1 - 1.0) < TOL


@pytest.mark.parametrize("leaves", [3, 5, 7])
def test_star_steklov_general(leaves):
    eigs = steklov_spectrum(star_graph(leaves)).steklov_eigs
    assert np.allclose(eigs, [0.0] + [1.0] * (leaves - 1), atol=TOL)


def test_steklov_requires_connectivity_and_boundary():
    disc = MultiGraph(
        names=("v1", "v2"), roles=(INTERIOR, INTERIOR), edges=()
    )
    with pytest.raises(ExpanderForgeError):
        steklov_spectrum(disc)
    with pytest.raises(ExpanderForgeError):
        steklov_spectrum(THETA)  # n = 0


def test_rayleigh_quotient_examples():
    f = [-1 / 3, 2 / 3, -1 / 3, -1 / 3]
    assert abs(rayleigh_quotient(STAR, f) - 1.5) < TOL
    assert rayleigh_quotient(STAR, [5.0] * 4) == 0.0
    assert abs(rayleigh_quotient(STAR, [0.0, 1.0, -1.0, 0.0]) - 1.0) < TOL
    with pytest.raises(ExpanderForgeError):
        rayleigh_quotient(STAR, [1.0, 0.0, 0.0, 0.0])  # zero boundary norm


def _connected_samples(combos, trials, seed):
    out = []
    for chi, n in combos:
        cfg = SampleConfig(chi=chi, n=n, trials=trials, seed=seed)
        for t in range(trials):
            g = sample_graph(cfg, t)
            if is_connected(g):
                out.append(g)
    return out


def test_sigma1_lower_bounds_random_rayleigh_quotients():
    """sigma1 <= R(f) for 200 harmonic extensions of mean-zero data."""
    rng = np.random.default_rng(5)
    for g in _connected_samples([(3, 3), (4, 2), (2, 4)], 10, seed=77):
        sigma1 = steklov_spectrum(g).sigma1
        n = g.n
        for _ in range(10):
            data = rng.normal(size=n)
            data -= data.mean()
            if np.linalg.norm(data) < 1e-12:
                continue
            f = harmonic_extension(g, data)
            assert sigma1 <= rayleigh_quotient(g, f) + TOL


def test_random_rayleigh_minimum_approaches_sigma1():
    rng = np.random.default_rng(8)
    for g in _connected_samples([(3, 3), (2, 4)], 5, seed=13):
        if g.num_vertices > 12:
            continue
        sigma1 = steklov_spectrum(g).sigma1
        best = math.inf
        for _ in range(2000):
            data = rng.normal(size=g.n)
            data -= data.mean()
            if np.linalg.norm(data) < 1e-12:
                continue
            best = min(best, rayleigh_quotient(g, harmonic_extension(g, data)))
        assert sigma1 <= best + TOL
        assert best <= sigma1 * 1.05


def test_lambda1_positive_iff_connected():
    cfg = SampleConfig(chi=6, n=4, trials=60, seed=3)
    saw_disconnected = False
    for t in range(cfg.trials):
        g = sample_graph(cfg, t)
        lam1 = laplacian_spectrum(g).lambda1
        if is_connected(g):
            assert lam1 > TOL
        else:
            saw_disconnected = True
            assert lam1 <= TOL
    assert saw_disconnected, "seed should produce at least one disconnected draw"


def test_domination_on_star_and_samples():
    ok, rep = verify_domination(STAR)
    assert ok and rep["min_margin"] >= -TOL
    for g in _connected_samples([(3, 3), (4, 2)], 20, seed=21):
        ok, rep = verify_domination(g)
        assert ok, rep


def test_report_json_shape():
    rep = report_json(STAR)
    assert rep["chi"] == 1 and rep["n"] == 3 and rep["genus"] == 0
    assert rep["connected"] is True
    assert len(rep["lambda"]) == 4 and len(rep["sigma"]) == 3
    assert rep["tol"] == TOL
