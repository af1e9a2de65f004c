"""The diagonal group as explicit permutations of G^m, and its invariants.

Generators come in five types: per-coordinate right multiplications,
simultaneous left multiplication, automorphisms acting coordinatewise,
coordinate permutations, and the inversion twist
(g_1, ..., g_m) -> (g_1^-1, g_1^-1 g_2, ..., g_1^-1 g_m).

The exact order of the generated group is computed with a deterministic
Schreier-Sims stabiliser chain (numpy arrays as permutations) and compared
against |G|^m * |Aut(G)| * (m+1)!.  Orbit counting, minimal block systems
and the induced action on the minimal partitions verify the remaining
symmetry claims.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .diaggraph import DiagGraph
from .errors import CapExceededError
from .groups import (
    GroupTable,
    automorphism_group,
    generating_sequence,
    is_elementary_abelian,
    is_simple_nonabelian,
)
from .partitions import Partition, UnionFind
from .semilattice import DEFAULT_VERTEX_CAP, minimal_partitions, vertex_codec

BSGS_POINT_CAP = 4096
BSGS_ORDER_CAP = 10**9

GENERATOR_TAGS = (
    "right-mult",
    "diag-left-mult",
    "aut",
    "coord-perm",
    "inversion-map",
)


@dataclass(frozen=True)
class TaggedPerm:
    """A permutation of the vertex set with its generator type."""

    tag: str
    image: tuple[int, ...]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))


def _perm_group_generators(perms: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Greedy generating subset of a closed permutation list."""
    if not perms:
        return []
    n = len(perms[0])
    identity = tuple(range(n))
    gens: list[tuple[int, ...]] = []
    closure = {identity}
    for p in sorted(perms):
        if p in closure:
            continue
        gens.append(p)
        frontier = [p]
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(closure):
                    for c in (
                        tuple(b[x] for x in a),
                        tuple(a[x] for x in b),
                    ):
                        if c not in closure:
                            closure.add(c)
                            nxt.append(c)
            frontier = nxt
        if len(closure) == len(perms):
            break
    return gens


def diagonal_group_generators(
    g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP
) -> list[TaggedPerm]:
    """Explicit image arrays for a generating set of the diagonal group.

    Uses generating sequences of G and of Aut(G) rather than full element
    lists; identity permutations are dropped and duplicates removed.
    """
    codec = vertex_codec(g, m, cap)
    n = codec.size
    tuples = [codec.decode(v) for v in range(n)]
    gens_g = generating_sequence(g)
    out: list[TaggedPerm] = []

    def emit(tag: str, fn) -> None:
        image = tuple(codec.encode(fn(t)) for t in tuples)
        perm = TaggedPerm(tag=tag, image=image)
        if not perm.is_identity() and all(perm.image != p.image for p in out):
            out.append(perm)

    for x in gens_g:
        for i in range(m):
            emit("right-mult", lambda t, x=x, i=i: t[:i] + (g.mul[t[i]][x],) + t[i + 1:])
    for x in gens_g:
        xi = g.inv[x]
        emit("diag-left-mult", lambda t, xi=xi: tuple(g.mul[xi][e] for e in t))
    for alpha in _perm_group_generators(automorphism_group(g)):
        emit("aut", lambda t, alpha=alpha: tuple(alpha[e] for e in t))
    if m >= 2:
        emit("coord-perm", lambda t: (t[1], t[0]) + t[2:])
        if m >= 3:
            emit("coord-perm", lambda t: t[1:] + (t[0],))
    emit(
        "inversion-map",
        lambda t: (g.inv[t[0]],) + tuple(g.mul[g.inv[t[0]]][e] for e in t[1:]),
    )
    return out


def diagonal_group_order_formula(g: GroupTable, m: int) -> int:
    return g.order**m * len(automorphism_group(g)) * factorial(m + 1)


class StabilizerChain:
    """Deterministic Schreier-Sims chain over numpy permutations.

    Level k works with its *effective* generator set: every strong generator
    stored at level k or deeper (all of those fix the bases above k, but may
    still move points of level k's orbit).  Adding a generator at one level
    therefore re-opens every shallower level; ``add_generator`` sweeps to a
    global fixpoint, and per-(level, generator) progress pointers keep the
    total work at one pass over each (orbit point, generator) pair.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.dtype = np.int16 if degree <= 32000 else np.int32
        self.identity = np.arange(degree, dtype=self.dtype)
        self.bases: list[int] = []
        self.eff: list[list[np.ndarray]] = []  # effective gens per level
        self.transversal: list[dict[int, np.ndarray]] = []
        self.inv_transversal: list[dict[int, np.ndarray]] = []
        self.orbit_order: list[list[int]] = []
        self._orbit_scan: list[dict[int, int]] = []
        self._schreier_done: list[dict[int, int]] = []
        self._seen_schreier: list[set[bytes]] = []
        self._version = 0

    def order(self) -> int:
        total = 1
        for trans in self.transversal:
            total *= len(trans)
        return total

    def stabilizer_generators(self) -> list[np.ndarray]:
        """Strong generators fixing the first base point."""
        return list(self.eff[1]) if len(self.bases) > 1 else []

    def _sift(self, p: np.ndarray, start: int) -> tuple[np.ndarray | None, int]:
        for level in range(start, len(self.bases)):
            b = self.bases[level]
            r = int(p[b])
            if r == b:
                continue
            inv = self.inv_transversal[level].get(r)
            if inv is None:
                return p, level
            p = inv[p]
        if np.array_equal(p, self.identity):
            return None, -1
        return p, len(self.bases)

    def _new_level(self, base: int) -> None:
        self.bases.append(base)
        self.eff.append([])
        self.transversal.append({base: self.identity})
        self.inv_transversal.append({base: self.identity})
        self.orbit_order.append([base])
        self._orbit_scan.append({})
        self._schreier_done.append({})
        self._seen_schreier.append(set())

    def _register(self, level: int, perm: np.ndarray) -> None:
        """Store perm at `level`; it is effective at every level up to it."""
        for k in range(level + 1):
            self.eff[k].append(perm)
        self._version += 1

    def _extend_orbit(self, level: int) -> None:
        trans = self.transversal[level]
        inv_trans = self.inv_transversal[level]
        order = self.orbit_order[level]
        eff = self.eff[level]
        scan = self._orbit_scan[level]
        moved = True
        while moved:
            moved = False
            for gi in range(len(eff)):
                start = scan.get(gi, 0)
                if start == len(order):
                    continue
                s = eff[gi]
                oi = start
                while oi < len(order):
                    p = order[oi]
                    r = int(s[p])
                    if r not in trans:
                        tr = s[trans[p]]
                        trans[r] = tr
                        inv = np.empty(self.degree, dtype=self.dtype)
                        inv[tr] = self.identity
                        inv_trans[r] = inv
                        order.append(r)
                    oi += 1
                scan[gi] = oi
                moved = True

    def _complete_level(self, level: int) -> None:
        """Extend the orbit and sift outstanding Schreier generators until
        the level is quiescent (deeper levels are completed recursively)."""
        trans = self.transversal[level]
        inv_trans = self.inv_transversal[level]
        order = self.orbit_order[level]
        eff = self.eff[level]
        done = self._schreier_done[level]
        seen = self._seen_schreier[level]
        base = self.bases[level]
        while True:
            self._extend_orbit(level)
            pending = [
                gi for gi in range(len(eff))
                if done.get(gi, 0) < len(order)
            ]
            if not pending:
                return
            for gi in pending:
                s = eff[gi]
                stop = len(order)
                for oi in range(done.get(gi, 0), stop):
                    p = order[oi]
                    x = s[trans[p]]
                    r = int(x[base])
                    sg = inv_trans[r][x]
                    key = sg.tobytes()
                    if key in seen:
                        continue
                    seen.add(key)
                    if np.array_equal(sg, self.identity):
                        continue
                    residue, at = self._sift(sg, level + 1)
                    if residue is not None:
                        self._add_at(at, residue)
                done[gi] = stop

    def add_generator(self, perm: np.ndarray) -> None:
        residue, level = self._sift(perm, 0)
        if residue is None:
            return
        self._add_at(level, residue)
        while True:
            version = self._version
            for k in range(len(self.bases) - 1, -1, -1):
                self._complete_level(k)
            if version == self._version:
                return

    def _add_at(self, level: int, perm: np.ndarray) -> None:
        if level == len(self.bases):
            moved = int(np.nonzero(perm != self.identity)[0][0])
            self._new_level(moved)
        self._register(level, perm)
        self._complete_level(level)


def schreier_sims_order(perms: list[TaggedPerm], point_cap: int = BSGS_POINT_CAP) -> int:
    """Exact order of the permutation group generated by perms."""
    if not perms:
        return 1
    degree = len(perms[0].image)
    if degree > point_cap:
        raise CapExceededError(f"degree {degree} exceeds BSGS cap {point_cap}")
    chain = StabilizerChain(degree)
    for p in perms:
        chain.add_generator(np.asarray(p.image, dtype=chain.dtype))
    return chain.order()


def build_chain(perms: list[TaggedPerm], point_cap: int = BSGS_POINT_CAP) -> StabilizerChain:
    if not perms:
        raise ValueError("need at least one permutation")
    degree = len(perms[0].image)
    if degree > point_cap:
        raise CapExceededError(f"degree {degree} exceeds BSGS cap {point_cap}")
    chain = StabilizerChain(degree)
    for p in perms:
        chain.add_generator(np.asarray(p.image, dtype=chain.dtype))
    return chain


def orbit_count(perms: list[TaggedPerm], items: list) -> int:
    """Orbits of the induced action on hashable items.

    Items may be vertices (ints), edges (sorted pairs) or cliques (sorted
    tuples); the action relabels entries through each permutation.
    """
    index = {item: i for i, item in enumerate(items)}
    uf = UnionFind(len(items))

    def apply(perm: tuple[int, ...], item):
        if isinstance(item, int):
            return perm[item]
        return tuple(sorted(perm[x] for x in item))

    for p in perms:
        for i, item in enumerate(items):
            j = index[apply(p.image, item)]
            uf.union(i, j)
    return len({uf.find(i) for i in range(len(items))})


def minimal_block_trivial(perms: list[TaggedPerm], n: int, v: int) -> bool:
    """True iff the minimal block system containing {0, v} is the whole set."""
    uf = UnionFind(n)
    uf.union(0, v)
    queue = [(0, v)]
    while queue:
        a, b = queue.pop()
        for p in perms:
            x, y = p.image[a], p.image[b]
            rx, ry = uf.find(x), uf.find(y)
            if rx != ry:
                uf.union(rx, ry)
                queue.append((rx, ry))
    root = uf.find(0)
    return uf.size[root] == n


@dataclass(frozen=True)
class PrimitivityReport:
    primitive: bool
    criterion: bool | None  # None when the group is outside the supported classification
    analysed_points: int

    @property
    def agrees(self) -> bool | None:
        if self.criterion is None:
            return None
        return self.primitive == self.criterion


def primitivity_criterion(g: GroupTable, m: int) -> bool | None:
    """Closed-form primitivity where the group classification is supported.

    Supported: elementary abelian p-groups (primitive iff p does not divide
    m+1), simple non-abelian groups, and explicit direct powers of simple
    non-abelian groups (both always primitive).  Anything else returns None.
    """
    p = is_elementary_abelian(g)
    if p is not None:
        return (m + 1) % p != 0
    try:
        if is_simple_nonabelian(g):
            return True
    except CapExceededError:
        return None
    if g.factors:
        labels = {f.label for f in g.factors}
        if len(labels) == 1:
            try:
                if is_simple_nonabelian(g.factors[0]):
                    return True
            except CapExceededError:
                return None
    return None


def is_vertex_primitive(
    g: GroupTable, m: int, cap: int = DEFAULT_VERTEX_CAP
) -> PrimitivityReport:
    """Block-system primitivity of the diagonal group action.

    The minimal block containing {0, v} depends only on the suborbit of v
    under the stabiliser of 0, so one representative per suborbit is tested;
    the suborbits come from the stabiliser level of the Schreier-Sims chain.
    """
    perms = diagonal_group_generators(g, m, cap)
    n = len(perms[0].image)
    chain = build_chain(perms)
    stab_gens = chain.stabilizer_generators()

    reps: list[int] = []
    if stab_gens:
        seen = [False] * n
        seen[0] = True
        for v in range(1, n):
            if seen[v]:
                continue
            reps.append(v)
            frontier = [v]
            seen[v] = True
            while frontier:
                nxt = []
                for x in frontier:
                    for s in stab_gens:
                        y = int(s[x])
                        if not seen[y]:
                            seen[y] = True
                            nxt.append(y)
                frontier = nxt
    else:
        reps = list(range(1, n))

    primitive = all(minimal_block_trivial(perms, n, v) for v in reps)
    return PrimitivityReport(
        primitive=primitive,
        criterion=primitivity_criterion(g, m),
        analysed_points=len(reps),
    )


def action_on_partitions(
    perms: list[TaggedPerm], minimals: list[Partition]
) -> list[tuple[int, ...]]:
    """Induced permutation of the minimal partitions for each generator.

    Raises if some generator does not permute them (that would contradict
    the semilattice being preserved).
    """
    canon = {p: i for i, p in enumerate(minimals)}
    n = minimals[0].size
    induced = []
    for perm in perms:
        row = []
        for p in minimals:
            labels = [0] * n
            for point in range(n):
                labels[perm.image[point]] = p.block_of[point]
            image = Partition.from_labels(labels)
            target = canon.get(image)
            if target is None:
                raise AssertionError(
                    f"generator {perm.tag} maps a minimal partition outside the family"
                )
            row.append(target)
        induced.append(tuple(row))
    return induced


def induced_symmetric_closure(induced: list[tuple[int, ...]]) -> int:
    """Size of the permutation group generated by the induced actions."""
    if not induced:
        return 1
    k = len(induced[0])
    identity = tuple(range(k))
    closure = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in induced:
                c = tuple(a[x] for x in s)
                if c not in closure:
                    closure.add(c)
                    nxt.append(c)
        frontier = nxt
    return len(closure)


@dataclass(frozen=True)
class SymmetryReport:
    order: int
    order_formula: int
    vertex_orbits: int
    edge_orbits: int
    clique_orbits: int | None
    primitive: bool
    criterion: bool | None
    criterion_agrees: bool | None
    induced_partition_group: int
    small_exceptional_case: bool  # m = 2 and |G| <= 4: the full automorphism
    # group of the graph is strictly larger, so verdicts describe the
    # diagonal group's action only

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "order_formula": self.order_formula,
            "vertex_orbits": self.vertex_orbits,
            "edge_orbits": self.edge_orbits,
            "clique_orbits": self.clique_orbits,
            "primitive": self.primitive,
            "criterion": self.criterion,
            "criterion_agrees": self.criterion_agrees,
            "induced_partition_group": self.induced_partition_group,
            "about_diagonal_action_only": self.small_exceptional_case,
        }


def symmetry_report(
    g: GroupTable,
    m: int,
    graph: DiagGraph,
    cliques: list[tuple[int, ...]] | None = None,
    cap: int = DEFAULT_VERTEX_CAP,
) -> SymmetryReport:
    if m < 2:
        raise ValueError("symmetry analysis needs m >= 2 (the minimal "
                         "partitions coincide at m = 1)")
    perms = diagonal_group_generators(g, m, cap)
    order = schreier_sims_order(perms)
    formula = diagonal_group_order_formula(g, m)
    vertex_orbits = orbit_count(perms, list(range(graph.size)))
    edge_orbits = orbit_count(perms, graph.edges())
    clique_orbits = orbit_count(perms, sorted(cliques)) if cliques else None
    prim = is_vertex_primitive(g, m, cap)
    induced = action_on_partitions(perms, minimal_partitions(g, m, cap))
    return SymmetryReport(
        order=order,
        order_formula=formula,
        vertex_orbits=vertex_orbits,
        edge_orbits=edge_orbits,
        clique_orbits=clique_orbits,
        primitive=prim.primitive,
        criterion=prim.criterion,
        criterion_agrees=prim.agrees,
        induced_partition_group=induced_symmetric_closure(induced),
        small_exceptional_case=(m == 2 and g.order <= 4),
    )
