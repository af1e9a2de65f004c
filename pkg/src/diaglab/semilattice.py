"""Diagonal semilattices: the minimal partitions of G^m and their closure.

The ground set is G^m encoded through a positional codec (coordinate 1 least
significant).  The m+1 minimal partitions are the coordinate partitions
Q_1..Q_m (tuples agreeing everywhere except one coordinate) and the diagonal
partition Q_0 (orbits of simultaneous left translation).  Their closure under
the coarsening operation, together with the singleton partition, is the
diagonal semilattice; its Moebius function has a closed form which
``verify_mobius`` checks against exact zeta inversion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .errors import CapExceededError
from .groups import GroupTable
from .partitions import (
    Partition,
    finer_or_equal,
    poset_matrices,
    singletons,
    supremum,
)

DEFAULT_VERTEX_CAP = 65536


@dataclass(frozen=True)
class VertexCodec:
    """Bijection between 0..q^m-1 and m-tuples over 0..q-1."""

    q: int
    m: int

    @property
    def size(self) -> int:
        return self.q**self.m

    def encode(self, tup) -> int:
        idx = 0
        for i in range(self.m - 1, -1, -1):
            idx = idx * self.q + tup[i]
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            idx, r = divmod(idx, self.q)
            out.append(r)
        return tuple(out)

    def all_tuples(self):
        for idx in range(self.size):
            yield self.decode(idx)


def vertex_codec(g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP) -> VertexCodec:
    if m < 1:
        raise ValueError("dimension m must be >= 1")
    if g.order**m > cap:
        raise CapExceededError(
            f"{g.order}^{m} = {g.order ** m} vertices exceeds cap {cap}"
        )
    return VertexCodec(q=g.order, m=m)


def build_q(g: GroupTable, m: int, i: int, cap: int = DEFAULT_VERTEX_CAP) -> Partition:
    """The minimal partition Q_i of G^m.

    For i >= 1 the parts collect tuples agreeing in every coordinate except
    i; for i = 0 they are the diagonal left-translation classes
    {(x*g_1, ..., x*g_m) : x in G}.
    """
    if not 0 <= i <= m:
        raise ValueError(f"partition index {i} outside 0..{m}")
    codec = vertex_codec(g, m, cap)
    labels = []
    if i >= 1:
        for tup in codec.all_tuples():
            labels.append(tup[: i - 1] + tup[i:])
    else:
        for tup in codec.all_tuples():
            x = g.inv[tup[0]]  # normal form: translate first coordinate to 0
            labels.append(tuple(g.mul[x][e] for e in tup))
    return Partition.from_labels(labels)


def minimal_partitions(g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP) -> list[Partition]:
    """Q_0, Q_1, ..., Q_m in that order."""
    return [build_q(g, m, i, cap) for i in range(m + 1)]


@dataclass(frozen=True)
class DiagonalSemilattice:
    """Closure of the minimal partitions under the coarsening operation.

    ``rank`` counts steps from the singleton partition along a longest chain;
    ``hasse`` lists cover pairs (lower index, upper index) into ``elements``.
    ``minimal_indices[i]`` locates Q_i.
    """

    m: int
    q: int
    size: int
    elements: tuple[Partition, ...]
    rank: tuple[int, ...]
    hasse: tuple[tuple[int, int], ...]
    e_index: int
    u_index: int
    minimal_indices: tuple[int, ...]


def join_closure(minimals: list[Partition]) -> DiagonalSemilattice:
    """Generate the semilattice: closure under pairwise suprema plus the
    empty supremum (the singleton partition)."""
    if not minimals:
        raise ValueError("need at least one generator partition")
    n = minimals[0].size
    if any(p.size != n for p in minimals):
        raise ValueError("generators must share a ground set")

    part_sizes = {len(blk) for p in minimals for blk in p.blocks()}
    if len(part_sizes) != 1:
        raise ValueError("generator partitions must have constant part size")
    q = part_sizes.pop()

    elements: list[Partition] = [singletons(n)]
    index: dict[Partition, int] = {elements[0]: 0}
    for p in minimals:
        if p not in index:
            index[p] = len(elements)
            elements.append(p)

    # Closure under pairwise supremum; new elements join the worklist.
    frontier = list(range(1, len(elements)))
    done: set[tuple[int, int]] = set()
    while frontier:
        next_frontier = []
        for i in frontier:
            for j in range(1, len(elements)):
                pair = (i, j) if i < j else (j, i)
                if i == j or pair in done:
                    continue
                done.add(pair)
                s = supremum(elements[i], elements[j])
                if s not in index:
                    index[s] = len(elements)
                    elements.append(s)
                    next_frontier.append(len(elements) - 1)
        frontier = next_frontier

    order = sorted(range(len(elements)),
                   key=lambda k: (-elements[k].block_count, elements[k].block_of))
    elements = [elements[k] for k in order]
    count = len(elements)

    leq = [[False] * count for _ in range(count)]
    for i in range(count):
        leq[i][i] = True
        for j in range(i + 1, count):
            if finer_or_equal(elements[i], elements[j]):
                leq[i][j] = True

    # Longest-chain rank over the sorted (topological) order.
    rank = [0] * count
    for j in range(count):
        best = 0
        for i in range(j):
            if leq[i][j] and elements[i] != elements[j]:
                best = max(best, rank[i] + 1)
        rank[j] = best

    hasse = []
    for i in range(count):
        for j in range(i + 1, count):
            if not leq[i][j]:
                continue
            if any(leq[i][k] and leq[k][j] for k in range(i + 1, j)):
                continue
            hasse.append((i, j))

    m = len(minimals) - 1
    single = [k for k in range(count) if elements[k].is_single_block()]
    if len(single) != 1:
        raise ValueError("closure did not produce the one-block partition")
    return DiagonalSemilattice(
        m=m,
        q=q,
        size=n,
        elements=tuple(elements),
        rank=tuple(rank),
        hasse=tuple(hasse),
        e_index=0,
        u_index=single[0],
        minimal_indices=tuple(elements.index(p) for p in minimals),
    )


def build_semilattice(g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP) -> DiagonalSemilattice:
    return join_closure(minimal_partitions(g, m, cap))


def check_cartesian(parts: list[Partition], q: int) -> bool:
    """True iff the given partitions generate a Cartesian lattice: every
    subset supremum has parts of size exactly q^|subset| and all 2^m suprema
    are pairwise distinct."""
    if not parts:
        return True
    n = parts[0].size
    m = len(parts)
    seen: set[Partition] = set()
    for mask in range(1 << m):
        chosen = [parts[i] for i in range(m) if mask >> i & 1]
        s = singletons(n)
        for p in chosen:
            s = supremum(s, p)
        want = q ** len(chosen)
        if any(len(blk) != want for blk in s.blocks()):
            return False
        if s in seen:
            return False
        seen.add(s)
    return True


def verify_semilattice_hypothesis(g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """Check that every m-subset of {Q_0..Q_m} generates a Cartesian lattice."""
    qs = minimal_partitions(g, m, cap)
    for drop in range(m + 1):
        subset = [qs[i] for i in range(m + 1) if i != drop]
        if not check_cartesian(subset, g.order):
            return False
    return True


def mobius_closed_form(rank_s: int, rank_t: int, t_is_u: bool, m: int) -> int:
    """Closed-form Moebius value between elements of ranks rank_s <= rank_t.

    Intervals not ending at the top element are Boolean, giving
    (-1)^(rank_t - rank_s); intervals ending at the top element U give
    (-1)^(m - rank_s) * (m - rank_s).  The value mu(U, U) = 1 is forced by
    unitriangularity (the alternating-sign product formula does not cover
    the degenerate one-element interval).
    """
    if not 0 <= rank_s <= rank_t <= m:
        raise ValueError(f"bad ranks {rank_s}, {rank_t} for dimension {m}")
    if not t_is_u:
        return (-1) ** (rank_t - rank_s)
    if rank_s == m:
        return 1
    s = m - rank_s
    return (-1) ** s * s


@dataclass(frozen=True)
class MobiusReport:
    """Outcome of comparing exact zeta inversion against the closed form."""

    element_count: int
    ranks: tuple[int, ...]
    mu_bottom_top: int
    mismatches: tuple[tuple[int, int, int, int], ...]  # (i, j, exact, closed)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> str:
        return json.dumps(
            {
                "elements": self.element_count,
                "ranks": list(self.ranks),
                "mu_bottom_top": self.mu_bottom_top,
                "mismatches": [list(t) for t in self.mismatches],
            },
            indent=2,
        )


def verify_mobius(sl: DiagonalSemilattice) -> MobiusReport:
    """Compare every Moebius entry of the semilattice with the closed form."""
    mats = poset_matrices(list(sl.elements))
    # poset_matrices sorts with the same key used by join_closure, so the
    # orders coincide; guard anyway.
    if mats.elements != sl.elements:
        raise AssertionError("element order diverged between builders")
    n = len(sl.elements)
    mismatches = []
    for i in range(n):
        for j in range(n):
            exact = mats.mobius[i][j]
            if mats.zeta[i][j]:
                expect = mobius_closed_form(
                    sl.rank[i], sl.rank[j], j == sl.u_index, sl.m
                )
            else:
                expect = 0
            if exact != expect:
                mismatches.append((i, j, exact, expect))
    return MobiusReport(
        element_count=n,
        ranks=sl.rank,
        mu_bottom_top=mats.mobius[sl.e_index][sl.u_index],
        mismatches=tuple(mismatches),
    )


def expected_rank_counts(m: int) -> dict[int, int]:
    """Element counts per rank: C(m+1, i) for i < m, and the single top."""
    counts = {i: comb(m + 1, i) for i in range(m)}
    counts[m] = 1
    return counts


def hasse_dot(sl: DiagonalSemilattice) -> str:
    """Render the Hasse diagram as a DOT digraph (edges point upward)."""
    names = {}
    for k, p in enumerate(sl.elements):
        if k == sl.e_index:
            names[k] = "E"
        elif k == sl.u_index:
            names[k] = "U"
        elif k in sl.minimal_indices:
            names[k] = f"Q{sl.minimal_indices.index(k)}"
        else:
            names[k] = f"P{k}"
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for k in range(len(sl.elements)):
        lines.append(
            f'  n{k} [label="{names[k]} (rank {sl.rank[k]})"];'
        )
    for i, j in sl.hasse:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)
