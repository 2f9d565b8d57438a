"""Half-edge pairings, multigraphs and topological invariants.

The model: chi interior vertices v_1..v_chi carry half-edge labels
(3i-2, 3i-1, 3i); n boundary vertices w_1..w_n carry the single label
3*chi + j.  A pairing of all labels is *good* when every pair contains at
least one interior label, so no edge ever joins two boundary vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ExpanderForgeError, ParityError

INTERIOR = "interior"
BOUNDARY = "boundary"


def check_parity(chi: int, n: int) -> None:
    """Raise ParityError unless 3*chi - n is a non-negative even integer."""
    if chi < 1 or n < 0:
        raise ParityError(f"need chi >= 1 and n >= 0, got chi={chi}, n={n}")
    if 3 * chi - n < 0 or (3 * chi - n) % 2 != 0:
        raise ParityError(
            f"3*chi - n = {3 * chi - n} must be a non-negative even integer"
        )


@dataclass(frozen=True)
class HalfEdgePairing:
    """A good partition: fixed-point-free involution on {1..3*chi+n}."""

    chi: int
    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_parity(self.chi, self.n)
        canon = tuple(sorted((min(i, j), max(i, j)) for i, j in self.pairs))
        object.__setattr__(self, "pairs", canon)
        if not validate_partition(self.chi, self.n, self.pairs):
            raise ExpanderForgeError("pairs do not form a good partition")

    @property
    def num_labels(self) -> int:
        return 3 * self.chi + self.n


def validate_partition(
    chi: int, n: int, pairs: Iterable[tuple[int, int]]
) -> bool:
    """True iff `pairs` is a fixed-point-free involution covering
    {1..3*chi+n} in which every pair contains an interior label (<= 3*chi).

    Raises ParityError when 3*chi - n is negative or odd; any other defect
    just yields False.
    """
    check_parity(chi, n)
    total = 3 * chi + n
    seen: set[int] = set()
    for i, j in pairs:
        if i == j:
            return False
        if not (1 <= i <= total and 1 <= j <= total):
            return False
        if i in seen or j in seen:
            return False
        seen.add(i)
        seen.add(j)
        if min(i, j) > 3 * chi:
            return False
    return len(seen) == total


@dataclass(frozen=True)
class MultiGraph:
    """Immutable multigraph: named vertices with role tags, edge multiset.

    Edges are stored as index pairs (u, v) with u <= v; loops (u, u) are
    allowed and a loop contributes 2 to its vertex degree but 1 to |E|.
    Parallel edges appear with repetition.
    """

    names: tuple[str, ...]
    roles: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.names) != len(self.roles):
            raise ExpanderForgeError("names/roles length mismatch")
        nv = len(self.names)
        canon = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        for u, v in canon:
            if not (0 <= u < nv and 0 <= v < nv):
                raise ExpanderForgeError(f"edge ({u},{v}) out of range")
        object.__setattr__(self, "edges", canon)

    @property
    def num_vertices(self) -> int:
        return len(self.names)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.num_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1  # a loop hits the same entry twice
        return deg

    def degree(self, v: int) -> int:
        return self.degrees()[v]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def boundary_indices(self) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r == BOUNDARY]

    def interior_indices(self) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r == INTERIOR]

    @property
    def chi(self) -> int:
        return len(self.interior_indices())

    @property
    def n(self) -> int:
        return len(self.boundary_indices())

    def adjacency_lists(self) -> list[list[int]]:
        """Neighbor lists ignoring multiplicity; loops listed once."""
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in set(self.edges):
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
        return adj

    def edge_multiplicities(self) -> dict[tuple[int, int], int]:
        mult: dict[tuple[int, int], int] = {}
        for e in self.edges:
            mult[e] = mult.get(e, 0) + 1
        return mult


@dataclass(frozen=True)
class Topology:
    components: int
    euler_char: int
    genus: int


def model_vertex_names(chi: int, n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(1, chi + 1)) + tuple(
        f"w{j}" for j in range(1, n + 1)
    )


def label_to_vertex(label: int, chi: int) -> int:
    """Map a half-edge label to the index of its owning vertex
    (interior vertices first, then boundary)."""
    if label <= 3 * chi:
        return (label - 1) // 3
    return chi + (label - 3 * chi - 1)


def build_graph(p: HalfEdgePairing) -> MultiGraph:
    """Glue the half-edges of a good partition into a multigraph.

    Interior vertex v_i owns labels (3i-2, 3i-1, 3i) and ends up with
    degree 3; boundary vertex w_j owns label 3*chi + j and has degree 1.
    """
    chi, n = p.chi, p.n
    names = model_vertex_names(chi, n)
    roles = (INTERIOR,) * chi + (BOUNDARY,) * n
    edges = tuple(
        (label_to_vertex(i, chi), label_to_vertex(j, chi)) for i, j in p.pairs
    )
    return MultiGraph(names=names, roles=roles, edges=edges)


class _UnionFind:
    __slots__ = ("parent", "count")

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.count = size

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.count -= 1


def connected_components(g: MultiGraph) -> list[set[int]]:
    """Partition of vertex indices into maximal connected sets."""
    uf = _UnionFind(g.num_vertices)
    for u, v in g.edges:
        if u != v:
            uf.union(u, v)
    comps: dict[int, set[int]] = {}
    for v in range(g.num_vertices):
        comps.setdefault(uf.find(v), set()).add(v)
    return sorted(comps.values(), key=min)


def is_connected(g: MultiGraph) -> bool:
    if g.num_vertices == 0:
        return True
    return len(connected_components(g)) == 1


def topology(g: MultiGraph) -> Topology:
    """Component count, Euler characteristic |V| - |E| and topological genus.

    Only defined for graphs with all degrees in {1, 3}; the genus
    (chi - n)/2 + 1 is read off from the degree counts.
    """
    degs = g.degrees()
    n3 = sum(1 for d in degs if d == 3)
    n1 = sum(1 for d in degs if d == 1)
    if n3 + n1 != len(degs):
        bad = sorted(set(d for d in degs if d not in (1, 3)))
        raise ExpanderForgeError(f"vertex degrees {bad} outside {{1, 3}}")
    return Topology(
        components=len(connected_components(g)),
        euler_char=g.num_vertices - g.num_edges,
        genus=(n3 - n1) // 2 + 1,
    )


# --- text format ------------------------------------------------------------
#
# One record per line.  Header `G <chi> <n>`, then one `E <u> <v>` line per
# edge with vertex ids v1..vchi, w1..wn; loops are written `E u u`.


def to_text(g: MultiGraph) -> str:
    chi, n = g.chi, g.n
    expected = model_vertex_names(chi, n)
    if g.names != expected:
        raise ExpanderForgeError(
            "text format requires canonical vertex names v1..vchi, w1..wn"
        )
    lines = [f"G {chi} {n}"]
    for u, v in g.edges:
        lines.append(f"E {g.names[u]} {g.names[v]}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> MultiGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("G "):
        raise ExpanderForgeError("missing `G <chi> <n>` header")
    _, chi_s, n_s = lines[0].split()
    chi, n = int(chi_s), int(n_s)
    names = model_vertex_names(chi, n)
    idx = {name: i for i, name in enumerate(names)}
    roles = (INTERIOR,) * chi + (BOUNDARY,) * n
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] != "E" or len(parts) != 3:
            raise ExpanderForgeError(f"bad edge record: {ln!r}")
        try:
            edges.append((idx[parts[1]], idx[parts[2]]))
        except KeyError as exc:
            raise ExpanderForgeError(f"unknown vertex id in {ln!r}") from exc
    return MultiGraph(names=names, roles=roles, edges=tuple(edges))


def relabel_canonical(
    names: Sequence[str], roles: Sequence[str], edges: Iterable[tuple[int, int]]
) -> MultiGraph:
    """Rename vertices to the canonical v1..vchi, w1..wn scheme, keeping
    interior vertices in their original relative order, then boundary."""
    order = [i for i, r in enumerate(roles) if r == INTERIOR] + [
        i for i, r in enumerate(roles) if r == BOUNDARY
    ]
    new_index = {old: new for new, old in enumerate(order)}
    chi = sum(1 for r in roles if r == INTERIOR)
    n = len(order) - chi
    return MultiGraph(
        names=model_vertex_names(chi, n),
        roles=(INTERIOR,) * chi + (BOUNDARY,) * n,
        edges=tuple((new_index[u], new_index[v]) for u, v in edges),
    )
