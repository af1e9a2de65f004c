"""Set partitions in canonical block form, with the refinement order.

Terminology.  This module follows the refinement-order convention used
throughout the package: ``infimum`` is the common refinement (blockwise
intersections) and ``supremum`` is the coarsening whose blocks are the
connected components of the two block structures overlaid.  Parts of the
design-theory literature attach the words "join" and "meet" to these two
operations the other way around; the names here are chosen so that the
diagonal semilattice, which is generated upward from its minimal partitions,
is literally closed under ``supremum``.  See README for the full note.
"""

from __future__ import annotations

from dataclasses import dataclass


class UnionFind:
    """Disjoint-set forest with path halving and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class Partition:
    """A partition of {0..size-1} in canonical block form.

    Block ids are assigned by first occurrence scanning points upward, so
    structural equality is plain field equality.
    """

    size: int
    block_of: tuple[int, ...]
    block_count: int

    @staticmethod
    def from_labels(labels) -> "Partition":
        """Canonicalize an arbitrary labelling of {0..n-1}."""
        remap: dict = {}
        canon = []
        for lab in labels:
            if lab not in remap:
                remap[lab] = len(remap)
            canon.append(remap[lab])
        return Partition(len(canon), tuple(canon), len(remap))

    @staticmethod
    def from_blocks(blocks, size: int | None = None) -> "Partition":
        points = [p for blk in blocks for p in blk]
        n = size if size is not None else (max(points) + 1 if points else 0)
        labels = [-1] * n
        for i, blk in enumerate(blocks):
            for p in blk:
                if labels[p] != -1:
                    raise ValueError(f"point {p} appears in two blocks")
                labels[p] = i
        if any(lab == -1 for lab in labels):
            raise ValueError("blocks do not cover the ground set")
        return Partition.from_labels(labels)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for p, b in enumerate(self.block_of):
            out[b].append(p)
        return out

    def is_singletons(self) -> bool:
        return self.block_count == self.size

    def is_single_block(self) -> bool:
        return self.block_count == 1


def singletons(n: int) -> Partition:
    """The equality partition: every part a singleton."""
    return Partition(n, tuple(range(n)), n)


def single_block(n: int) -> Partition:
    """The universal partition with one part."""
    return Partition(n, (0,) * n, 1 if n else 0)


def _check_same_ground(p: Partition, q: Partition) -> None:
    if p.size != q.size:
        raise ValueError(f"ground sets differ: {p.size} vs {q.size}")


def finer_or_equal(p: Partition, q: Partition) -> bool:
    """True iff every block of p lies inside a single block of q."""
    _check_same_ground(p, q)
    seen: list[int] = [-1] * p.block_count
    for point in range(p.size):
        bp = p.block_of[point]
        bq = q.block_of[point]
        if seen[bp] == -1:
            seen[bp] = bq
        elif seen[bp] != bq:
            return False
    return True


def infimum(p: Partition, q: Partition) -> Partition:
    """Common refinement: blocks are the non-empty pairwise intersections."""
    _check_same_ground(p, q)
    return Partition.from_labels(zip(p.block_of, q.block_of))


def supremum(p: Partition, q: Partition) -> Partition:
    """Coarsening by connected components, via disjoint-set union."""
    _check_same_ground(p, q)
    uf = UnionFind(p.size)
    for part in (p, q):
        anchor = [-1] * part.block_count
        for point in range(part.size):
            b = part.block_of[point]
            if anchor[b] == -1:
                anchor[b] = point
            else:
                uf.union(anchor[b], point)
    return Partition.from_labels(uf.find(x) for x in range(p.size))


def supremum_many(parts: list[Partition], n: int) -> Partition:
    """Supremum of a (possibly empty) list; the empty supremum is singletons."""
    acc = singletons(n)
    for p in parts:
        acc = supremum(acc, p)
    return acc


@dataclass(frozen=True)
class PosetMatrices:
    """Zeta and Moebius matrices of a finite family of partitions.

    ``elements`` is sorted by decreasing block count (a linear extension of
    refinement), so zeta is upper unitriangular and mobius is its exact
    integer inverse.
    """

    elements: tuple[Partition, ...]
    zeta: tuple[tuple[int, ...], ...]
    mobius: tuple[tuple[int, ...], ...]

    def index_of(self, p: Partition) -> int:
        return self.elements.index(p)


def poset_matrices(elems: list[Partition]) -> PosetMatrices:
    """Exact zeta and Moebius matrices for pairwise-distinct partitions."""
    if len(set(elems)) != len(elems):
        raise ValueError("poset elements must be pairwise distinct")
    if elems and any(e.size != elems[0].size for e in elems):
        raise ValueError("poset elements must share a ground set")
    ordered = sorted(elems, key=lambda p: (-p.block_count, p.block_of))
    n = len(ordered)
    zeta = [[0] * n for _ in range(n)]
    for i in range(n):
        zeta[i][i] = 1
        for j in range(i + 1, n):
            if finer_or_equal(ordered[i], ordered[j]):
                zeta[i][j] = 1
    # Invert the unitriangular matrix by forward substitution, exactly.
    mobius = [[0] * n for _ in range(n)]
    for i in range(n):
        mobius[i][i] = 1
        for j in range(i + 1, n):
            mobius[i][j] = -sum(
                mobius[i][k] * zeta[k][j] for k in range(i, j) if zeta[k][j]
            )
    return PosetMatrices(
        elements=tuple(ordered),
        zeta=tuple(tuple(row) for row in zeta),
        mobius=tuple(tuple(row) for row in mobius),
    )


def parse_partition(text: str) -> Partition:
    """Parse the one-line text format: comma-separated block ids."""
    toks = [t.strip() for t in text.strip().split(",") if t.strip() != ""]
    if not toks:
        raise ValueError("empty partition text")
    return Partition.from_labels(int(t) for t in toks)


def format_partition(p: Partition) -> str:
    return ",".join(str(b) for b in p.block_of)
