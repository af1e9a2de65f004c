"""The diagonal graph: construction, metric, clique and regularity checks.

Two independent constructions are kept side by side: ``build_graph`` derives
adjacency from the minimal partitions, ``cayley_graph`` from the connection
set inside G^m (u ~ v iff v*u^-1 has exactly one non-identity coordinate or
is a constant non-identity tuple).  ``same_edge_set`` asserts they agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil

from .errors import CapExceededError
from .groups import GroupTable
from .semilattice import (
    DEFAULT_VERTEX_CAP,
    VertexCodec,
    minimal_partitions,
    vertex_codec,
)


@dataclass(frozen=True)
class DiagGraph:
    """Simple regular graph on G^m with per-edge partition tags.

    ``edge_tag[(u, v)]`` (u < v) names the minimal partition whose part
    contains the edge; for dimension m >= 2 this tag is unique.
    """

    q: int
    m: int
    size: int
    adjacency: tuple[tuple[int, ...], ...]
    edge_tag: dict[tuple[int, int], int]
    codec: VertexCodec

    @property
    def valency(self) -> int:
        return (self.m + 1) * (self.q - 1) if self.m >= 2 else self.q - 1

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_tag)

    def edge_count(self) -> int:
        return len(self.edge_tag)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]


def _graph_from_edges(
    q: int, m: int, size: int, tagged_edges: dict[tuple[int, int], int], codec: VertexCodec
) -> DiagGraph:
    adj: list[list[int]] = [[] for _ in range(size)]
    for u, v in tagged_edges:
        adj[u].append(v)
        adj[v].append(u)
    return DiagGraph(
        q=q,
        m=m,
        size=size,
        adjacency=tuple(tuple(sorted(nb)) for nb in adj),
        edge_tag=tagged_edges,
        codec=codec,
    )


def build_graph(g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP) -> DiagGraph:
    """Adjacency from the minimal partitions: joined iff some part of some
    Q_i contains both vertices.  For m = 1 this is the complete graph."""
    if g.order < 2:
        raise ValueError("group order must be >= 2 for a diagonal graph")
    codec = vertex_codec(g, m, cap)
    tagged: dict[tuple[int, int], int] = {}
    for i, part in enumerate(minimal_partitions(g, m, cap)):
        for block in part.blocks():
            for a in range(len(block)):
                for b in range(a + 1, len(block)):
                    e = (block[a], block[b])
                    if e not in tagged:
                        tagged[e] = i
                    elif m >= 2:
                        raise AssertionError(
                            f"edge {e} lies in two minimal partitions"
                        )
    return _graph_from_edges(g.order, m, codec.size, tagged, codec)


@dataclass(frozen=True)
class ConnectionSet:
    """Inverse-closed, identity-free subset of G^m defining the Cayley graph."""

    q: int
    m: int
    tuples: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.tuples)


def connection_set(g: GroupTable, m: int) -> ConnectionSet:
    """Tuples with one non-identity coordinate, plus non-identity constants."""
    if g.order < 2:
        raise ValueError("group order must be >= 2")
    if m < 1:
        raise ValueError("dimension m must be >= 1")
    seen: dict[tuple[int, ...], None] = {}
    for i in range(m):
        for x in range(1, g.order):
            tup = tuple(x if j == i else 0 for j in range(m))
            seen.setdefault(tup, None)
    for x in range(1, g.order):
        seen.setdefault((x,) * m, None)
    return ConnectionSet(q=g.order, m=m, tuples=tuple(seen))


def cayley_graph(g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP) -> DiagGraph:
    """Independent construction: v ~ s*v (componentwise) for s in the
    connection set.  Tags: the moved coordinate for one-coordinate tuples,
    0 for the constant (diagonal) tuples."""
    codec = vertex_codec(g, m, cap)
    conn = connection_set(g, m)
    tags = []
    for s in conn.tuples:
        moved = [i for i in range(m) if s[i] != 0]
        tags.append(moved[0] + 1 if len(moved) == 1 and m >= 2 else 0)
    tagged: dict[tuple[int, int], int] = {}
    for idx in range(codec.size):
        u = codec.decode(idx)
        for s, tag in zip(conn.tuples, tags):
            w = codec.encode(tuple(g.mul[s[i]][u[i]] for i in range(m)))
            e = (idx, w) if idx < w else (w, idx)
            if e not in tagged:
                tagged[e] = tag
    return _graph_from_edges(g.order, m, codec.size, tagged, codec)


def same_edge_set(a: DiagGraph, b: DiagGraph) -> bool:
    return set(a.edge_tag) == set(b.edge_tag)


def bfs_distances(graph: DiagGraph, start: int) -> list[int]:
    dist = [-1] * graph.size
    dist[start] = 0
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in graph.adjacency[u]:
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


@dataclass(frozen=True)
class DiameterReport:
    bfs: int
    formula: int

    @property
    def ok(self) -> bool:
        return self.bfs == self.formula


def diameter(graph: DiagGraph, paranoid: bool = False) -> DiameterReport:
    """BFS diameter against the closed form m+1-ceil((m+1)/q).

    Vertex-transitivity makes the eccentricity of vertex 0 the diameter;
    ``paranoid`` recomputes from every base vertex.
    """
    bases = range(graph.size) if paranoid else (0,)
    ecc = max(max(bfs_distances(graph, b)) for b in bases)
    formula = graph.m + 1 - ceil((graph.m + 1) / graph.q)
    return DiameterReport(bfs=ecc, formula=formula)


def common_neighbours(graph: DiagGraph, u: int, v: int) -> list[int]:
    if u == v:
        raise ValueError("common neighbours need two distinct vertices")
    return sorted(set(graph.adjacency[u]) & set(graph.adjacency[v]))


# The four small graphs whose clique structure departs from the generic
# pattern (dimension 2 over groups of order at most 4).  The clique counts
# were computed with the enumerator below and are frozen as regression
# values; the two order-16 graphs share a spectrum but differ in their
# number of 4-cliques.
EXCEPTIONAL_CLIQUE_TABLE = {
    (2, 2, "elementary"): {
        "name": "complete graph K4",
        "clique_number": 4,
        "maximal_cliques": 1,
        "max_size_cliques": 1,
    },
    (3, 2, "elementary"): {
        "name": "complete tripartite graph K333",
        "clique_number": 3,
        "maximal_cliques": 27,
        "max_size_cliques": 27,
    },
    (4, 2, "elementary"): {
        "name": "complement of the 4x4 rook's graph",
        "clique_number": 4,
        "maximal_cliques": 24,
        "max_size_cliques": 24,
    },
    (4, 2, "cyclic"): {
        "name": "complement of the Shrikhande graph",
        "clique_number": 4,
        "maximal_cliques": 48,
        "max_size_cliques": 16,
    },
}


def exceptional_key(g: GroupTable, m: int) -> tuple[int, int, str] | None:
    if m != 2 or g.order > 4:
        return None
    exponent = max(g.order_of(x) for x in g.elements())
    variant = "cyclic" if exponent == g.order and g.order == 4 else "elementary"
    return (g.order, m, variant)


def bron_kerbosch(adjacency: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    """All maximal cliques, via pivoting over a fixed vertex order.

    The outer loop peels vertices in index order (each vertex only looks at
    later neighbours), which keeps subproblems at most the size of a
    neighbourhood.
    """
    n = len(adjacency)
    nbr = [set(a) for a in adjacency]
    cliques: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            cliques.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(p & nbr[u]), -u))
        for v in sorted(p - nbr[pivot]):
            expand(r + [v], p & nbr[v], x & nbr[v])
            p.remove(v)
            x.add(v)

    for v in range(n):
        later = {u for u in nbr[v] if u > v}
        earlier = {u for u in nbr[v] if u < v}
        expand([v], later, earlier)
    return cliques


@dataclass(frozen=True)
class CliqueReport:
    clique_number: int
    cliques: tuple[tuple[int, ...], ...]
    exceptional: bool
    exceptional_name: str | None
    parts_are_max_cliques: bool

    @property
    def count(self) -> int:
        return len(self.cliques)


def maximal_cliques(
    g: GroupTable, graph: DiagGraph, cap: int = 4096
) -> CliqueReport:
    """Enumerate maximal cliques and check them against the partition parts.

    Outside the four exceptional graphs the maximum cliques must be exactly
    the parts of the minimal partitions; for dimension > 2 every maximal
    clique is such a part.
    """
    if graph.size > cap:
        raise CapExceededError(f"{graph.size} vertices exceeds clique cap {cap}")
    cliques = bron_kerbosch(graph.adjacency)
    omega = max(len(c) for c in cliques)
    key = exceptional_key(g, graph.m)

    parts = {
        tuple(sorted(block))
        for part in minimal_partitions(g, graph.m)
        for block in part.blocks()
        if len(block) >= 2
    }
    max_cliques = {c for c in cliques if len(c) == omega}

    if key is not None:
        expect = EXCEPTIONAL_CLIQUE_TABLE[key]
        ok = (
            omega == expect["clique_number"]
            and len(cliques) == expect["maximal_cliques"]
            and len(max_cliques) == expect["max_size_cliques"]
        )
        if not ok:
            raise AssertionError(
                f"exceptional graph {expect['name']} does not match its table entry"
            )
        return CliqueReport(
            clique_number=omega,
            cliques=tuple(sorted(cliques)),
            exceptional=True,
            exceptional_name=expect["name"],
            parts_are_max_cliques=max_cliques == parts,
        )

    if omega != g.order:
        raise AssertionError(
            f"clique number {omega} differs from group order {g.order}"
        )
    if max_cliques != parts:
        raise AssertionError("maximum cliques are not exactly the partition parts")
    if graph.m > 2 and len(cliques) != len(max_cliques):
        raise AssertionError("a maximal clique below maximum size exists")
    return CliqueReport(
        clique_number=omega,
        cliques=tuple(sorted(cliques)),
        exceptional=False,
        exceptional_name=None,
        parts_are_max_cliques=True,
    )


@dataclass(frozen=True)
class CliqueCover:
    parts: tuple[tuple[int, ...], ...]
    lower_bound: int

    @property
    def size(self) -> int:
        return len(self.parts)


def clique_cover(g: GroupTable, graph: DiagGraph) -> CliqueCover:
    """Vertex-disjoint clique cover from the parts of Q_1 (q^(m-1) cliques),
    with the matching lower bound size/q."""
    from .semilattice import build_q

    part = build_q(g, graph.m, 1)
    blocks = [tuple(sorted(b)) for b in part.blocks()]
    nbr = [set(a) for a in graph.adjacency]
    covered: set[int] = set()
    for blk in blocks:
        for i, u in enumerate(blk):
            if u in covered:
                raise AssertionError("cover blocks overlap")
            covered.add(u)
            for v in blk[i + 1:]:
                if v not in nbr[u]:
                    raise AssertionError(f"cover block {blk} is not a clique")
    if len(covered) != graph.size:
        raise AssertionError("cover misses vertices")
    return CliqueCover(parts=tuple(blocks), lower_bound=graph.size // g.order)


def is_distance_regular(
    graph: DiagGraph, paranoid: bool = False
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Distance-regularity by sphere counting from a base vertex.

    Vertex-transitivity justifies the single base; ``paranoid`` re-checks
    from every vertex.  Returns (verdict, (b_array, c_array) or None).
    """
    bases = range(graph.size) if paranoid else (0,)
    result: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    for base in bases:
        dist = bfs_distances(graph, base)
        diam = max(dist)
        b = [-1] * (diam + 1)
        c = [-1] * (diam + 1)
        for v in range(graph.size):
            i = dist[v]
            down = up = 0
            for w in graph.adjacency[v]:
                if dist[w] == i - 1:
                    down += 1
                elif dist[w] == i + 1:
                    up += 1
            for arr, val in ((c, down), (b, up)):
                if i >= 0:
                    if arr[i] == -1:
                        arr[i] = val
                    elif arr[i] != val:
                        return False, None
        arrays = (tuple(b[:diam]), tuple(c[1:]))
        if result is None:
            result = arrays
        elif result != arrays:
            return False, None
    return True, result


def _bits_to_graph6_bytes(bits: list[int]) -> bytes:
    while len(bits) % 6:
        bits.append(0)
    out = bytearray()
    for i in range(0, len(bits), 6):
        val = 0
        for bit in bits[i: i + 6]:
            val = val << 1 | bit
        out.append(val + 63)
    return bytes(out)


def to_graph6(graph: DiagGraph) -> str:
    """Standard graph6 encoding (long size form for more than 62 vertices)."""
    n = graph.size
    if n == 0 or not graph.edge_tag:
        raise ValueError("refusing to encode an empty graph")
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    else:
        raise ValueError(f"graph6 size form for n={n} not supported")
    edges = set(graph.edge_tag)
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in edges else 0)
    return (head + _bits_to_graph6_bytes(bits)).decode("ascii")


def parse_graph6(text: str) -> list[list[int]]:
    """Decode a graph6 string into sorted adjacency lists."""
    data = [ord(ch) - 63 for ch in text.strip()]
    if data and data[0] == 63:  # 0x7e '~' marks the long form
        n = data[1] << 12 | data[2] << 6 | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    bits = []
    for val in data:
        for k in range(5, -1, -1):
            bits.append(val >> k & 1)
    adj: list[list[int]] = [[] for _ in range(n)]
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                adj[i].append(j)
                adj[j].append(i)
            pos += 1
    return [sorted(a) for a in adj]


def to_dot(graph: DiagGraph) -> str:
    lines = ["graph diagonal {"]
    for v in range(graph.size):
        tup = graph.codec.decode(v)
        lines.append(f'  v{v} [label="{",".join(map(str, tup))}"];')
    for u, v in graph.edges():
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines)


def to_edgelist(graph: DiagGraph) -> str:
    return "\n".join(f"{u} {v}" for u, v in graph.edges())


def export_graph(graph: DiagGraph, fmt: str) -> str:
    if fmt == "graph6":
        return to_graph6(graph)
    if fmt == "dot":
        return to_dot(graph)
    if fmt == "edgelist":
        return to_edgelist(graph)
    raise ValueError(f"unknown export format: {fmt!r}")


def property_report(g: GroupTable, graph: DiagGraph, clique_cap: int = 4096) -> dict:
    """JSON-ready summary of the graph's headline parameters."""
    diam = diameter(graph)
    dr, arrays = is_distance_regular(graph)
    report = {
        "q": graph.q,
        "m": graph.m,
        "N": graph.size,
        "valency": graph.valency,
        "edges": graph.edge_count(),
        "diameter": diam.bfs,
        "diameter_formula": diam.formula,
        "dr": dr,
    }
    if arrays is not None and dr:
        report["intersection_array"] = [list(arrays[0]), list(arrays[1])]
    if graph.size <= clique_cap:
        report["clique_number"] = maximal_cliques(g, graph, clique_cap).clique_number
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
