"""The worked examples and exhaustive properties making up the ``verify`` suite.

Every check returns ``(passed, detail)`` and is deterministic.
"""
from collections.abc import Callable
from itertools import combinations

import networkx as nx
import structlog

from matroid_recolouring.config import Caps
from matroid_recolouring.core.catalogue import (
    clique_matroid,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    cycle_matroid,
    edge_matroid,
    graph_corpus,
    half_cube,
    loop_matroid,
    looped_clique_matroid,
    looped_projective_geometry,
    path_graph,
    path_matroid,
    projective_geometry,
)
from matroid_recolouring.core.decision import (
    TutteContext,
    decision_graph,
    mk_equivalence_mismatches,
    phi_fiber_bijection_check,
    tutte_phi,
    tutte_tau,
)
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.graphs import GraphColouring, SimpleGraph, build_gcol_graph
from matroid_recolouring.core.hom import (
    MatroidHom,
    dismantles_to,
    dismantling_retractions,
    enumerate_homs,
    is_homomorphism,
)
from matroid_recolouring.core.matroid import (
    BinaryMatroid,
    PointSet,
    circuits,
    cocircuits,
    from_columns,
    graphic,
)
from matroid_recolouring.core.recolor import (
    adjacent,
    build_col_graph,
    neighbors,
    projective_path,
    recol_decide,
    validate_path,
)
from matroid_recolouring.core.reduction import verify_k5auto, verify_reduction

logger = structlog.getLogger()

Check = Callable[[Caps, str], tuple[bool, str]]

# edges of the five-vertex example graph coloured by K_4 in the Tutte connection walkthrough
TUTTE_EXAMPLE_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (2, 4))
TUTTE_EXAMPLE_TAU = ("01", "01", "01", "10", "11", "11")
TUTTE_EXAMPLE_PHI = ("01", "00", "01", "00", "10")
TUTTE_EXAMPLE_PHI_REVERSE = ("10", "11", "10", "11", "01")

# the dismantling retraction of M(K_4) folding the star of vertex 3 onto the opposite triangle
K4_FOLDING_RETRACTION = (0, 1, 3, 3, 1, 0)


def minimal_edge_cuts(graph: SimpleGraph) -> set[PointSet]:
    """Bonds: edges leaving a side S of a component when S and the rest are both connected."""
    g = graph.to_networkx()
    found = set()
    for component in nx.connected_components(g):
        anchor, *others = sorted(component)
        for size in range(len(others)):
            for rest in combinations(others, size):
                side = {anchor, *rest}
                if not nx.is_connected(g.subgraph(side)):
                    continue
                if not nx.is_connected(g.subgraph(component - side)):
                    continue
                indices = [graph.index_of_edge(u, v) for u, v in nx.edge_boundary(g, side)]
                found.add(PointSet.from_indices(len(graph.edges), indices))
    return found


def cycle_edge_sets(graph: SimpleGraph) -> set[PointSet]:
    """Edge sets of the simple cycles of a graph."""
    found = set()
    for cycle in nx.simple_cycles(graph.to_networkx()):
        pairs = zip(cycle, [*cycle[1:], cycle[0]])
        found.add(
            PointSet.from_indices(len(graph.edges), [graph.index_of_edge(u, v) for u, v in pairs]),
        )
    return found


def tutte_example() -> tuple[SimpleGraph, BinaryMatroid, MatroidHom]:
    """The five-vertex graph, M(K_3) as ``01, 10, 11`` and its hom ``tau_phi``."""
    graph = SimpleGraph(5, TUTTE_EXAMPLE_EDGES)
    matroid = from_columns([BitVec.from_str(s) for s in ("01", "10", "11")])
    image = [matroid.index_of(BitVec.from_str(s)) for s in TUTTE_EXAMPLE_TAU]
    return graph, matroid, MatroidHom(graphic(graph), matroid, image)


def check_cycle_into_triangle(caps: Caps, scheduler: str) -> tuple[bool, str]:
    col = build_col_graph(
        cycle_matroid(5),
        clique_matroid(3),
        max_homs=caps.max_homs,
        max_rank=caps.max_rank,
        cross_check=True,
        scheduler=scheduler,
    )
    count, parts = len(col.homs), len(col.components())
    return count == 60 and parts == 1, f"{count} homs, {parts} component(s)"


def check_clique_into_triangle(caps: Caps, scheduler: str) -> tuple[bool, str]:
    col = build_col_graph(
        clique_matroid(4),
        clique_matroid(3),
        max_homs=caps.max_homs,
        max_rank=caps.max_rank,
        cross_check=True,
        scheduler=scheduler,
    )
    iso = nx.is_isomorphic(col.to_networkx(), nx.complete_bipartite_graph(3, 3))
    return iso, f"{len(col.homs)} homs, {len(col.edges)} edges, K_3,3: {iso}"


def check_clique_vertex_recolouring(caps: Caps, scheduler: str) -> tuple[bool, str]:  # noqa: ARG001
    gcol = build_gcol_graph(complete_graph(4), complete_graph(4), max_homs=caps.max_homs)
    passed = len(gcol.colourings) == 24 and not gcol.edges
    return passed, f"{len(gcol.colourings)} colourings, {len(gcol.edges)} edges"


def check_decision_graphs(caps: Caps, scheduler: str) -> tuple[bool, str]:  # noqa: ARG001
    expected = [
        ("D_u(M(K_3))", clique_matroid(3), complete_graph(4)),
        ("D_u(PG(1,2))", projective_geometry(1), complete_graph(4)),
        ("D_u(PG(2,2))", projective_geometry(2), complete_graph(8)),
        ("D_u(M(K_4))", clique_matroid(4), half_cube(4)),
        ("D_u(M(K_5))", clique_matroid(5), half_cube(5)),
    ]
    failed = [
        name
        for name, matroid, graph in expected
        if not nx.is_isomorphic(
            decision_graph(matroid, max_rank=caps.max_rank).graph.to_networkx(),
            graph.to_networkx(),
        )
    ]
    return not failed, f"{len(expected) - len(failed)}/{len(expected)} isomorphic" + (
        f", failed {failed}" if failed else ""
    )


def tutte_corpus() -> list[SimpleGraph]:
    """Connected graphs up to four vertices, plus three on five."""
    return [*graph_corpus(4), cycle_graph(5), path_graph(5), complete_bipartite_graph(2, 3)]


def check_tutte_round_trip(caps: Caps, scheduler: str) -> tuple[bool, str]:  # noqa: ARG001
    targets = [clique_matroid(3), clique_matroid(4), projective_geometry(1)]
    corpus = tutte_corpus()
    failures = sum(
        not phi_fiber_bijection_check(graph, target, max_homs=caps.max_homs)
        for graph in corpus
        for target in targets
    )
    graph, matroid, tau = tutte_example()
    decision = decision_graph(matroid, universal=False)
    phi = tutte_phi(tau, TutteContext(graph), BitVec.from_str("01"), decision)
    forward = [str(phi.colour(v)) for v in range(graph.n)] == list(TUTTE_EXAMPLE_PHI)
    reverse_image = [BitVec.from_str(s).bits for s in TUTTE_EXAMPLE_PHI_REVERSE]
    backward = tutte_tau(GraphColouring(graph, decision.graph, reverse_image), decision) == tau
    passed = failures == 0 and forward and backward
    return passed, (
        f"{len(corpus)} graphs x {len(targets)} targets, {failures} failures, "
        f"worked example forward {forward} backward {backward}"
    )


def const_on_cocircuit_violations(
    domain: BinaryMatroid,
    codomain: BinaryMatroid,
    caps: Caps,
) -> tuple[int, int]:
    """Pairs where a cocircuit difference set and a constant cocircuit shift disagree."""
    homs = enumerate_homs(domain, codomain, max_homs=caps.max_homs)
    violations = 0
    for tau in homs:
        shifted = {sigma.image for sigma in neighbors(tau, max_rank=caps.max_rank)}
        for sigma in homs:
            if sigma == tau:
                continue
            # adjacent raises on a cocircuit difference with a non-constant shift
            if (adjacent(tau, sigma) is not None) != (sigma.image in shifted):
                violations += 1
    return len(homs) ** 2, violations


def check_const_on_cocircuit(caps: Caps, scheduler: str) -> tuple[bool, str]:  # noqa: ARG001
    instances = [
        (cycle_matroid(5), clique_matroid(3)),
        (clique_matroid(4), clique_matroid(3)),
        (cycle_matroid(4), clique_matroid(4)),
    ]
    pairs = violations = 0
    for domain, codomain in instances:
        checked, bad = const_on_cocircuit_violations(domain, codomain, caps)
        pairs, violations = pairs + checked, violations + bad
    return violations == 0, f"{pairs} pairs, {violations} violations"


def check_looped_projective(caps: Caps, scheduler: str) -> tuple[bool, str]:
    violations = graphs = 0
    for graph in graph_corpus(5):
        domain = graphic(graph)
        for t in (1, 2):
            graphs += 1
            col = build_col_graph(
                domain,
                looped_projective_geometry(t),
                max_homs=caps.max_homs,
                max_rank=caps.max_rank,
                scheduler=scheduler,
            )
            if len(col.components()) != 1:
                violations += 1
                continue
            first = col.homs[0]
            for sigma in col.homs[1:]:
                bound = sum(first.image[b] != sigma.image[b] for b in domain.basis)
                path = projective_path(first, sigma)
                if not validate_path(path) or path.length > bound:
                    violations += 1
            # one searched path per colouring graph, never longer than the built one
            last = col.homs[-1]
            decided = recol_decide(first, last, max_rank=caps.max_rank, max_states=caps.max_states)
            if decided is None or not validate_path(decided):
                violations += 1
            elif decided.length > projective_path(first, last).length:
                violations += 1
    return violations == 0, f"{graphs} colouring graphs, {violations} violations"


def check_dismantling(caps: Caps, scheduler: str) -> tuple[bool, str]:  # noqa: ARG001
    k4 = clique_matroid(4)
    folding = K4_FOLDING_RETRACTION in {
        r.image for r in dismantling_retractions(k4, max_rank=caps.max_rank)
    }
    to_triangle = dismantles_to(
        k4,
        clique_matroid(3),
        max_rank=caps.max_rank,
        max_states=caps.max_states,
    )
    looped = [
        dismantles_to(
            looped_clique_matroid(n),
            loop_matroid(),
            max_rank=caps.max_rank,
            max_states=caps.max_states,
        )
        is not None
        for n in (2, 3, 4)
    ]
    triangle = dismantles_to(
        clique_matroid(3),
        edge_matroid(),
        max_rank=caps.max_rank,
        max_states=caps.max_states,
    )
    passed = folding and to_triangle is not None and len(to_triangle) == 1 and all(looped)
    passed = passed and triangle is None
    return passed, (
        f"folding retraction found {folding}, M(K_4) to M(K_3) "
        f"{None if to_triangle is None else len(to_triangle)}, looped cliques {looped}, "
        f"M(K_3) to M(K_2) absent {triangle is None}"
    )


def check_kempe_equivalence(caps: Caps, scheduler: str) -> tuple[bool, str]:  # noqa: ARG001
    target = projective_geometry(1)
    corpus = graph_corpus(5)
    mismatches = sum(
        mk_equivalence_mismatches(
            graph,
            target,
            max_homs=caps.max_homs,
            max_states=caps.max_states,
        )
        for graph in corpus
    )
    return mismatches == 0, f"{len(corpus)} graphs, {mismatches} mismatches"


def check_clique_automorphisms(caps: Caps, scheduler: str) -> tuple[bool, str]:  # noqa: ARG001
    k6_minus_edge = SimpleGraph(6, [e for e in complete_graph(6).edges if e != (4, 5)])
    k5_pendant = SimpleGraph(6, [*complete_graph(5).edges, (4, 5)])
    graphs = [complete_graph(5), complete_graph(6), k6_minus_edge, k5_pendant]
    embeddings = [verify_k5auto(5, g, max_homs=caps.max_homs) for g in graphs]
    counterexample = not verify_k5auto(4, complete_graph(3), max_homs=caps.max_homs)
    return all(embeddings) and counterexample, (
        f"n = 5 embeddings {embeddings}, n = 4 counterexample {counterexample}"
    )


def check_reduction(caps: Caps, scheduler: str) -> tuple[bool, str]:
    sources = [
        ("M(K_3)", clique_matroid(3)),
        ("M(C_4)", cycle_matroid(4)),
        ("M(P_3)", path_matroid(3)),
    ]
    details = []
    passed = True
    for name, source in sources:
        report = verify_reduction(
            source,
            clique_matroid(5),
            max_homs=caps.max_homs,
            max_rank=caps.max_rank,
            max_states=caps.max_states,
            scheduler=scheduler,
        )
        logger.debug(event="Checked reduction instance", source=name, ok=report.ok)
        passed = passed and report.ok
        details.append(f"{name}: {report.pairs_checked} pairs, {len(report.mismatches)} mismatches")
    return passed, "; ".join(details)


def check_cross_oracles(caps: Caps, scheduler: str) -> tuple[bool, str]:
    discrepancies = 0
    instances = [
        (cycle_matroid(5), clique_matroid(3)),
        (clique_matroid(4), clique_matroid(3)),
        (cycle_matroid(4), clique_matroid(4)),
        (clique_matroid(3), looped_projective_geometry(1)),
    ]
    for domain, codomain in instances:
        # raises when neighbour generation and pairwise adjacency disagree
        col = build_col_graph(
            domain,
            codomain,
            max_homs=caps.max_homs,
            max_rank=caps.max_rank,
            cross_check=True,
            scheduler=scheduler,
        )
        for tau in col.homs:
            # raises when the fundamental and full circuit checks disagree
            is_homomorphism(domain, codomain, tau.image, exhaustive=True, max_rank=caps.max_rank)
    corpus = graph_corpus(5)
    for graph in corpus:
        matroid = graphic(graph)
        if set(cocircuits(matroid, max_rank=caps.max_rank)) != minimal_edge_cuts(graph):
            discrepancies += 1
        if set(circuits(matroid, max_rank=caps.max_rank)) != cycle_edge_sets(graph):
            discrepancies += 1
    return discrepancies == 0, (
        f"{len(instances)} colouring graphs, {len(corpus)} graphs, {discrepancies} discrepancies"
    )


CHECKS: tuple[tuple[str, Check], ...] = (
    ("Col(M(C_5), M(K_3)) has 60 homs and is connected", check_cycle_into_triangle),
    ("Col(M(K_4), M(K_3)) is K_3,3", check_clique_into_triangle),
    ("gCol(K_4, K_4) has 24 isolated vertices", check_clique_vertex_recolouring),
    ("universal decision graphs", check_decision_graphs),
    ("Tutte connection round trip", check_tutte_round_trip),
    ("cocircuit differences are constant shifts", check_const_on_cocircuit),
    ("looped projective targets are connected", check_looped_projective),
    ("dismantling retractions", check_dismantling),
    ("Kempe and matroid connectivity agree into PG(1,2)", check_kempe_equivalence),
    ("homs from M(K_5) are embeddings", check_clique_automorphisms),
    ("gadget reduction preserves connectivity", check_reduction),
    ("cross-oracle consistency", check_cross_oracles),
)
