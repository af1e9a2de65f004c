"""Command-line interface: construction, verification and export.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 size cap exceeded.  ``DIAGLAB_CAP_VERTICES`` overrides the default vertex
cap.  All output is deterministic; ``--format text`` renders the same data
that ``--format json`` emits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from . import diaggraph, semilattice, spectral, symmetry
from .chromatic import chromatic_verdict, find_complete_mapping, hall_paige_predicate
from .errors import CapExceededError, DiagLabError
from .groups import is_elementary_abelian, parse_group_spec
from .semilattice import DEFAULT_VERTEX_CAP

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

GRID_DEFAULT_GROUPS = ("C2", "C3", "C4", "C5", "C6", "C2xC2", "S3", "D4", "Q8")
GRID_DEFAULT_VERTEX_LIMIT = 4096


@dataclass
class RunConfig:
    group: str = ""
    m: int = 2
    vertex_cap: int = DEFAULT_VERTEX_CAP
    clique_cap: int = 4096
    exact_cap: int = 64
    fmt: str = "json"
    paranoid: bool = False
    exact: bool = False
    out: str | None = None


def default_vertex_cap() -> int:
    env = os.environ.get("DIAGLAB_CAP_VERTICES")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise DiagLabError(
                f"DIAGLAB_CAP_VERTICES must be an integer, got {env!r}"
            ) from exc
    return DEFAULT_VERTEX_CAP


def _render(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True)
    lines = []

    def walk(prefix: str, value) -> None:
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}.", value[k])
        elif isinstance(value, list):
            lines.append(f"{prefix[:-1]}: {value}")
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    walk("", data)
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _claim(claims: list, name: str, passed: bool, detail: str = "", conjectural: bool = False) -> None:
    claims.append(
        {"claim": name, "passed": bool(passed), "detail": detail, "conjectural": conjectural}
    )


def run_check_all(cfg: RunConfig) -> dict:
    """Run every verification for one instance; returns the claims ledger."""
    g = parse_group_spec(cfg.group)
    m = cfg.m
    q = g.order
    claims: list[dict] = []

    ok = semilattice.verify_semilattice_hypothesis(g, m, cfg.vertex_cap)
    _claim(claims, "cartesian-hypothesis", ok,
           "every m-subset of the minimal partitions generates a Cartesian lattice")

    sl = semilattice.build_semilattice(g, m, cfg.vertex_cap)
    expected = semilattice.expected_rank_counts(m)
    got: dict[int, int] = {}
    for r in sl.rank:
        got[r] = got.get(r, 0) + 1
    _claim(claims, "rank-counts", got == expected,
           f"elements per rank {got}, expected binomials {expected}")

    rep = semilattice.verify_mobius(sl)
    _claim(claims, "mobius-closed-form", rep.ok,
           f"mu(bottom,top) = {rep.mu_bottom_top}, mismatches = {len(rep.mismatches)}")

    graph = diaggraph.build_graph(g, m, cfg.vertex_cap)
    cay = diaggraph.cayley_graph(g, m, cfg.vertex_cap)
    _claim(claims, "construction-agreement", diaggraph.same_edge_set(graph, cay),
           "partition-based and connection-set edge sets coincide")

    val = graph.valency
    degree_ok = all(len(nb) == val for nb in graph.adjacency)
    _claim(claims, "valency", degree_ok, f"regular of valency {val}")
    _claim(claims, "edge-count", graph.edge_count() * 2 == graph.size * val,
           f"{graph.edge_count()} edges")

    diam = diaggraph.diameter(graph, cfg.paranoid)
    _claim(claims, "diameter-formula", diam.ok,
           f"bfs {diam.bfs} vs closed form {diam.formula}")

    closed = spectral.spectrum_closed_form(q, m) if m >= 2 else None
    if closed is not None:
        moments = spectral.spectrum_trace_moments(graph, cfg.paranoid)
        _claim(claims, "spectrum-agreement", closed.entries == moments.entries,
               f"{len(closed.entries)} distinct eigenvalues")
        inv_ok = (
            closed.total_multiplicity() == graph.size
            and closed.moment(1) == 0
            and closed.moment(2) == graph.size * val
        )
        _claim(claims, "spectrum-moments", inv_ok,
               "multiplicity sum, trace, and closed 2-walks all agree")
        _claim(claims, "stratum-identities", spectral.verify_stratum_identity(q, m),
               "interval dimension sums and multiplicity grouping")

    if graph.size <= cfg.clique_cap:
        try:
            creport = diaggraph.maximal_cliques(g, graph, cfg.clique_cap)
            detail = (
                f"{creport.count} maximal cliques, clique number {creport.clique_number}"
            )
            if creport.exceptional:
                detail += f" ({creport.exceptional_name})"
            _claim(claims, "clique-structure", True, detail)
        except AssertionError as exc:
            creport = None
            _claim(claims, "clique-structure", False, str(exc))
        cover = diaggraph.clique_cover(g, graph)
        _claim(claims, "clique-cover", cover.size == q ** (m - 1),
               f"{cover.size} disjoint cliques, lower bound {cover.lower_bound}")
    else:
        creport = None

    if m >= 2:
        dr, arrays = diaggraph.is_distance_regular(graph, cfg.paranoid)
        expect_dr = m == 2 or q == 2
        detail = f"distance-regular: {dr}"
        if arrays and dr:
            detail += f", intersection array {arrays}"
        _claim(claims, "distance-regular-iff", dr == expect_dr, detail)

    verdict = chromatic_verdict(g, m, exact=cfg.exact, exact_cap=cfg.exact_cap)
    if verdict.chi is not None and (m % 2 == 1 or hall_paige_predicate(g)):
        _claim(claims, "chromatic-number", verdict.chi == q,
               f"chi = {verdict.chi} via {verdict.reason[0]}")
    else:
        bounds_ok = verdict.upper is None or verdict.lower <= verdict.upper
        _claim(claims, "chromatic-bounds", bounds_ok,
               f"bounds [{verdict.lower}, {verdict.upper}]")
        if verdict.conjecture is not None and verdict.upper is not None:
            _claim(claims, "chromatic-conjecture",
                   verdict.upper == verdict.conjecture,
                   f"upper bound {verdict.upper} vs conjectured {verdict.conjecture}",
                   conjectural=True)

    cm = find_complete_mapping(g) if q <= 16 else None
    if q <= 16:
        _claim(claims, "hall-paige", (cm is not None) == hall_paige_predicate(g),
               f"complete mapping {'found' if cm else 'absent'}")

    if m >= 2:
        perms = symmetry.diagonal_group_generators(g, m, cfg.vertex_cap)
        formula = symmetry.diagonal_group_order_formula(g, m)
        if graph.size <= symmetry.BSGS_POINT_CAP and formula <= symmetry.BSGS_ORDER_CAP:
            order = symmetry.schreier_sims_order(perms)
            _claim(claims, "symmetry-order", order == formula,
                   f"Schreier-Sims order {order}, formula {formula}")
        _claim(claims, "vertex-transitive",
               symmetry.orbit_count(perms, list(range(graph.size))) == 1,
               "one vertex orbit")
        edge_orbits = symmetry.orbit_count(perms, graph.edges())
        elem_ab = is_elementary_abelian(g) is not None
        _claim(claims, "edge-transitive-iff", (edge_orbits == 1) == elem_ab,
               f"{edge_orbits} edge orbits, elementary abelian: {elem_ab}")
        if creport is not None and (m > 2 or q > 4):
            top = [c for c in creport.cliques if len(c) == creport.clique_number]
            clique_orbits = symmetry.orbit_count(perms, top)
            _claim(claims, "clique-transitive", clique_orbits == 1,
                   f"{clique_orbits} orbits on the {len(top)} maximum cliques")
        prim = symmetry.is_vertex_primitive(g, m, cfg.vertex_cap)
        if prim.criterion is None:
            _claim(claims, "primitivity", True,
                   f"block computation: primitive={prim.primitive}; "
                   "criterion: unsupported classification")
        else:
            _claim(claims, "primitivity", prim.agrees is True,
                   f"blocks say primitive={prim.primitive}, criterion says {prim.criterion}")
        induced = symmetry.action_on_partitions(
            perms, semilattice.minimal_partitions(g, m, cfg.vertex_cap))
        size = symmetry.induced_symmetric_closure(induced)
        want = 1
        for k in range(2, m + 2):
            want *= k
        _claim(claims, "partition-action", size == want,
               f"induced group on the minimal partitions has size {size} (want {want})")

    failures = [c["claim"] for c in claims if not c["passed"] and not c["conjectural"]]
    return {
        "group": g.label,
        "q": q,
        "m": m,
        "n": graph.size,
        "claims": claims,
        "failures": failures,
        "ok": not failures,
    }


def _instance_key(entry: dict) -> tuple:
    return (entry.get("group", ""), entry.get("m", 0))


def run_grid(groups: list[str], m_values: list[int], cfg: RunConfig,
             vertex_limit: int, jobs: int = 1) -> dict:
    """check-all across a grid of instances, skipping oversize ones."""
    tasks = []
    for spec in groups:
        for m in m_values:
            tasks.append((spec, m))

    def one(task: tuple[str, int]) -> dict:
        spec, m = task
        local = replace(cfg, group=spec, m=m)
        try:
            g = parse_group_spec(spec)
            if g.order**m > vertex_limit:
                return {"group": spec, "m": m, "skipped": True}
            return run_check_all(local)
        except DiagLabError as exc:
            return {"group": spec, "m": m, "error": str(exc), "ok": False}
        except ValueError as exc:
            return {"group": spec, "m": m, "error": str(exc), "ok": False}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(one, tasks))
    else:
        entries = [one(t) for t in tasks]
    entries.sort(key=_instance_key)
    ran = [e for e in entries if not e.get("skipped")]
    failures = [e for e in ran if not e.get("ok")]
    return {
        "instances": entries,
        "ran": len(ran),
        "failed": len(failures),
        "ok": not failures,
    }


def _add_common(p: argparse.ArgumentParser, with_m: bool = True) -> None:
    p.add_argument("--group", required=True, help="group expression, e.g. C3 or C2xC2")
    if with_m:
        p.add_argument("--m", type=int, required=True, help="dimension m >= 1")
    p.add_argument("--format", dest="fmt", default=None, help="output format")
    p.add_argument("--out", default=None, help="write output to this path")
    p.add_argument("--cap-vertices", type=int, default=None)
    p.add_argument("--paranoid", action="store_true",
                   help="re-run symmetry-based shortcuts from every base vertex")
    p.add_argument("--exact", action="store_true",
                   help="run exact search where a cap allows it")


def _build_config(args: argparse.Namespace, with_m: bool = True) -> RunConfig:
    cfg = RunConfig()
    cfg.group = getattr(args, "group", "")
    if with_m:
        cfg.m = args.m
        if cfg.m < 1:
            raise DiagLabError("m must be >= 1")
    cfg.vertex_cap = args.cap_vertices or default_vertex_cap()
    cfg.fmt = args.fmt or "json"
    cfg.paranoid = args.paranoid
    cfg.exact = args.exact
    cfg.out = args.out
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="diaglab",
        description="diagonal semilattices and diagonal graphs over small finite groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("build", "semilattice", "mobius", "spectrum", "diameter",
                 "cliques", "chromatic", "symmetry", "check-all"):
        p = sub.add_parser(name)
        _add_common(p)
        if name == "spectrum":
            p.add_argument("--verify", action="store_true",
                           help="also compare against trace moments")

    p = sub.add_parser("mapping")
    _add_common(p, with_m=False)

    p = sub.add_parser("grid")
    p.add_argument("--groups", default=",".join(GRID_DEFAULT_GROUPS),
                   help="comma-separated group expressions")
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--max-vertices", type=int, default=GRID_DEFAULT_VERTEX_LIMIT)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", dest="fmt", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--cap-vertices", type=int, default=None)
    p.add_argument("--paranoid", action="store_true")
    p.add_argument("--exact", action="store_true")

    args = parser.parse_args(argv)

    try:
        return _dispatch(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DiagLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command

    if cmd == "grid":
        cfg = RunConfig()
        cfg.vertex_cap = args.cap_vertices or default_vertex_cap()
        cfg.paranoid = args.paranoid
        cfg.exact = args.exact
        groups = [s for s in args.groups.split(",") if s]
        m_values = list(range(args.m_min, args.m_max + 1))
        report = run_grid(groups, m_values, cfg, args.max_vertices, args.jobs)
        _emit(_render(report, args.fmt or "json"), args.out)
        return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED

    if cmd == "mapping":
        cfg = _build_config(args, with_m=False)
        g = parse_group_spec(cfg.group)
        cm = find_complete_mapping(g)
        data = {
            "group": g.label,
            "order": g.order,
            "hall_paige": hall_paige_predicate(g),
            "exists": cm is not None,
            "phi": list(cm.phi) if cm else None,
        }
        _emit(_render(data, cfg.fmt), cfg.out)
        return EXIT_OK

    cfg = _build_config(args)
    g = parse_group_spec(cfg.group)

    if cmd == "build":
        graph = diaggraph.build_graph(g, cfg.m, cfg.vertex_cap)
        fmt = cfg.fmt if cfg.fmt in ("graph6", "dot", "edgelist") else "graph6"
        text = diaggraph.export_graph(graph, fmt)
        summary = json.dumps(
            {"N": graph.size, "valency": graph.valency, "edges": graph.edge_count()},
            sort_keys=True,
        )
        if cfg.out:
            _emit(text, cfg.out)
            print(summary)
        else:
            print(text)
            print(summary, file=sys.stderr)
        return EXIT_OK

    if cmd == "semilattice":
        sl = semilattice.build_semilattice(g, cfg.m, cfg.vertex_cap)
        _emit(semilattice.hasse_dot(sl), cfg.out)
        return EXIT_OK

    if cmd == "mobius":
        sl = semilattice.build_semilattice(g, cfg.m, cfg.vertex_cap)
        rep = semilattice.verify_mobius(sl)
        _emit(rep.to_json(), cfg.out)
        return EXIT_OK if rep.ok else EXIT_CHECK_FAILED

    if cmd == "spectrum":
        closed = spectral.spectrum_closed_form(g.order, cfg.m)
        data = closed.to_dict()
        if args.verify:
            graph = diaggraph.build_graph(g, cfg.m, cfg.vertex_cap)
            moments = spectral.spectrum_trace_moments(graph, cfg.paranoid)
            data["verified"] = moments.entries == closed.entries
            _emit(_render(data, cfg.fmt), cfg.out)
            return EXIT_OK if data["verified"] else EXIT_CHECK_FAILED
        _emit(_render(data, cfg.fmt), cfg.out)
        return EXIT_OK

    if cmd == "diameter":
        graph = diaggraph.build_graph(g, cfg.m, cfg.vertex_cap)
        rep = diaggraph.diameter(graph, cfg.paranoid)
        data = {"bfs": rep.bfs, "formula": rep.formula, "match": rep.ok}
        _emit(_render(data, cfg.fmt), cfg.out)
        return EXIT_OK if rep.ok else EXIT_CHECK_FAILED

    if cmd == "cliques":
        graph = diaggraph.build_graph(g, cfg.m, cfg.vertex_cap)
        rep = diaggraph.maximal_cliques(g, graph, cfg.clique_cap)
        cover = diaggraph.clique_cover(g, graph)
        data = {
            "clique_number": rep.clique_number,
            "maximal_cliques": rep.count,
            "exceptional": rep.exceptional,
            "exceptional_name": rep.exceptional_name,
            "cover_size": cover.size,
            "cover_lower_bound": cover.lower_bound,
        }
        _emit(_render(data, cfg.fmt), cfg.out)
        return EXIT_OK

    if cmd == "chromatic":
        verdict = chromatic_verdict(g, cfg.m, exact=cfg.exact, exact_cap=cfg.exact_cap)
        _emit(_render(verdict.to_dict(), cfg.fmt), cfg.out)
        return EXIT_OK

    if cmd == "symmetry":
        graph = diaggraph.build_graph(g, cfg.m, cfg.vertex_cap)
        cliques = None
        if graph.size <= cfg.clique_cap:
            crep = diaggraph.maximal_cliques(g, graph, cfg.clique_cap)
            cliques = [c for c in crep.cliques if len(c) == crep.clique_number]
        rep = symmetry.symmetry_report(g, cfg.m, graph, cliques, cfg.vertex_cap)
        _emit(_render(rep.to_dict(), cfg.fmt), cfg.out)
        return EXIT_OK

    if cmd == "check-all":
        report = run_check_all(cfg)
        _emit(_render(report, cfg.fmt), cfg.out)
        return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED

    raise DiagLabError(f"unknown command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
