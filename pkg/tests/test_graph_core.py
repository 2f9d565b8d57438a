import pytest

from expander_forge.errors import ExpanderForgeError, ParityError
from expander_forge.graph_core import (
    BOUNDARY,
    INTERIOR,
    HalfEdgePairing,
    MultiGraph,
    build_graph,
    connected_components,
    from_text,
    is_connected,
    relabel_canonical,
    to_text,
    topology,
    validate_partition,
)
from expander_forge.sampler import enumerate_family


STAR = HalfEdgePairing(chi=1, n=3, pairs=((1, 4), (2, 5), (3, 6)))
LOOP_PENDANT = HalfEdgePairing(chi=1, n=1, pairs=((1, 4), (2, 3)))
THETA = HalfEdgePairing(chi=2, n=0, pairs=((1, 4), (2, 5), (3, 6)))


def test_validate_partition_good():
    assert validate_partition(1, 3, [(1, 4), (2, 5), (3, 6)])


def test_validate_partition_boundary_boundary_pair():
    assert not validate_partition(1, 3, [(4, 5), (1, 2), (3, 6)])


def test_validate_partition_parity_error():
    with pytest.raises(ParityError):
        validate_partition(1, 2, [(1, 2)])


def test_validate_partition_defects():
    assert not validate_partition(1, 3, [(1, 1), (2, 5), (3, 6)])  # fixed point
    assert not validate_partition(1, 3, [(1, 4), (1, 5), (3, 6)])  # repeat
    assert not validate_partition(1, 3, [(1, 4), (2, 5)])  # not covering
    assert not validate_partition(1, 3, [(1, 7), (2, 5), (3, 6)])  # range


def test_pairing_rejects_bad_pairs():
    with pytest.raises(ExpanderForgeError):
        HalfEdgePairing(chi=1, n=3, pairs=((4, 5), (1, 2), (3, 6)))


def test_build_graph_star():
    g = build_graph(STAR)
    assert g.names == ("v1", "w1", "w2", "w3")
    assert g.roles == (INTERIOR, BOUNDARY, BOUNDARY, BOUNDARY)
    assert sorted(g.edges) == [(0, 1), (0, 2), (0, 3)]
    assert g.degrees() == [3, 1, 1, 1]


def test_build_graph_loop_pendant():
    g = build_graph(LOOP_PENDANT)
    assert g.edges == ((0, 0), (0, 1))
    assert g.degrees() == [3, 1]  # loop counts 2
    assert g.num_edges == 2


def test_build_graph_theta():
    g = build_graph(THETA)
    assert g.edges == ((0, 1), (0, 1), (0, 1))
    assert g.degrees() == [3, 3]


def test_connected_components():
    star = build_graph(STAR)
    assert connected_components(star) == [{0, 1, 2, 3}]
    iso = MultiGraph(names=("a", "b"), roles=(INTERIOR, INTERIOR), edges=())
    assert connected_components(iso) == [{0}, {1}]
    assert is_connected(build_graph(THETA))


def test_topology_examples():
    t = topology(build_graph(STAR))
    assert (t.components, t.euler_char, t.genus) == (1, 1, 0)
    t = topology(build_graph(THETA))
    assert (t.components, t.euler_char, t.genus) == (1, -1, 2)
    t = topology(build_graph(LOOP_PENDANT))
    assert (t.components, t.euler_char, t.genus) == (1, 0, 1)


def test_topology_rejects_bad_degrees():
    g = MultiGraph(
        names=("a", "b"), roles=(INTERIOR, INTERIOR), edges=((0, 1), (0, 1))
    )
    with pytest.raises(ExpanderForgeError):
        topology(g)  # both vertices have degree 2


@pytest.mark.parametrize("chi,n", [(1, 1), (1, 3), (2, 0), (2, 2), (3, 1), (3, 3)])
def test_euler_genus_over_enumeration(chi, n):
    for p in enumerate_family(chi, n):
        g = build_graph(p)
        degs = g.degrees()
        assert sum(1 for d in degs if d == 3) == chi
        assert sum(1 for d in degs if d == 1) == n
        for u, v in g.edges:
            assert not (g.roles[u] == BOUNDARY and g.roles[v] == BOUNDARY)
        if is_connected(g):
            t = topology(g)
            assert t.euler_char == 1 - t.genus
            assert t.genus == (chi - n) // 2 + 1


def test_text_round_trip():
    for p in (STAR, LOOP_PENDANT, THETA):
        g = build_graph(p)
        assert from_text(to_text(g)) == g


def test_text_format_shape():
    text = to_text(build_graph(LOOP_PENDANT))
    lines = text.strip().splitlines()
    assert lines[0] == "G 1 1"
    assert "E v1 v1" in lines and "E v1 w1" in lines


def test_from_text_errors():
    with pytest.raises(ExpanderForgeError):
        from_text("X 1 1\n")
    with pytest.raises(ExpanderForgeError):
        from_text("G 1 1\nE v1 z9\n")


def test_relabel_canonical_reorders_roles():
    g = relabel_canonical(
        ["x", "y", "z"],
        [BOUNDARY, INTERIOR, INTERIOR],
        [(0, 1), (1, 2), (1, 2), (2, 2)],
    )
    assert g.names == ("v1", "v2", "w1")
    assert g.roles == (INTERIOR, INTERIOR, BOUNDARY)
    assert sorted(g.edges) == [(0, 1), (0, 1), (0, 2), (1, 1)]
