"""The gadget reducing recolouring into M(K_4) to recolouring into a target containing M(K_5).

The gadget M* is built from M and the cycle matroid of K_n on new coordinates ``u_0..u_{n-1}``.
For each point ``e`` of M it adds a twin ``e' = e + u_0 + u_1 + u_2 + u_3``, so that
``{e, e'}`` together with the star ``{u_i + u_{n-1} : i < 4}`` is a circuit. Homs
``M -> M(K_4)`` lift to homs ``M* -> N`` by sending ``u_i`` to the vertex vectors of a clique
copy in N, and restrict back by reading the star's images.
"""
import time
from collections.abc import Iterable, Sequence
from itertools import combinations, permutations

import dask.bag
import networkx as nx
import structlog
from pydantic import BaseModel, ConfigDict

from matroid_recolouring.config import default_scheduler
from matroid_recolouring.constants import (
    DEFAULT_MAX_HOMS,
    DEFAULT_MAX_RANK,
    DEFAULT_MAX_STATES,
    GADGET_STAR_SIZE,
    MIN_GADGET_CLIQUE,
)
from matroid_recolouring.core.catalogue import clique_matroid, complete_graph
from matroid_recolouring.core.gf2core import BitVec, in_span, rank_of
from matroid_recolouring.core.graphs import GraphColouring, SimpleGraph
from matroid_recolouring.core.hom import (
    MatroidHom,
    automorphisms,
    cocircuit_shifts,
    compose,
    enumerate_homs,
    identity,
    induced_graph_hom,
    is_homomorphism,
    linear_extension,
)
from matroid_recolouring.core.matroid import (
    BinaryMatroid,
    CliqueCopy,
    PointSet,
    decompose_cocycle,
    find_clique_copy,
    graphic,
    is_circuit,
    is_cocycle,
    largest_clique_copy,
)
from matroid_recolouring.core.recolor import (
    CocircuitWitness,
    RecolPath,
    adjacent,
    build_col_graph,
    lift_walk,
    neighbor_moves,
    recol_decide,
    shift_hom,
    validate_path,
)
from matroid_recolouring.core.search import BreadthFirstSearch
from matroid_recolouring.errors import (
    ArgumentError,
    ConstructionError,
    InternalError,
    PreconditionError,
    RecolouringError,
    SimplicityError,
)
from matroid_recolouring.models.reports import ReductionReport
from matroid_recolouring.utils import CrossingCase, PathMethod

logger = structlog.getLogger()

K4_EDGES: tuple[tuple[int, int], ...] = complete_graph(4).edges


class GadgetInstance:
    """M* together with the bookkeeping linking it to M and to the clique copy in N.

    Points of M* are ordered as the points of M, then the clique block (the star of
    ``u_{n-1}`` first, led by the four star points), then the twins.
    """

    def __init__(
        self,
        *,
        source: BinaryMatroid,
        target: BinaryMatroid,
        clique: CliqueCopy,
        matroid: BinaryMatroid,
        block_pairs: tuple[tuple[int, int], ...],
    ) -> None:
        self.source = source
        self.target = target
        self.clique = clique
        self.matroid = matroid
        self.block_pairs = block_pairs
        self.block_start = source.size
        self.twin_start = source.size + len(block_pairs)
        self._pair_index = {p: self.block_start + k for k, p in enumerate(block_pairs)}

    @property
    def n(self) -> int:
        """Size of the clique block."""
        return self.clique.n

    @property
    def last(self) -> int:
        """The star centre ``u_{n-1}``."""
        return self.clique.n - 1

    def twin(self, e: int) -> int:
        """Index of ``e'`` in M*."""
        return self.twin_start + e

    def pair_of(self, index: int) -> tuple[int, int] | None:
        """The block edge ``(i, j)`` at an index of M*, None outside the block."""
        if self.block_start <= index < self.twin_start:
            return self.block_pairs[index - self.block_start]
        return None

    def point_of_pair(self, i: int, j: int) -> int:
        """Index in M* of the block point ``u_i + u_j``."""
        return self._pair_index[(min(i, j), max(i, j))]

    @property
    def star(self) -> PointSet:
        """The four points ``u_i + u_{n-1}``, i < 4."""
        return PointSet.from_indices(
            self.matroid.size,
            [self.point_of_pair(i, self.last) for i in range(GADGET_STAR_SIZE)],
        )

    @property
    def block(self) -> PointSet:
        """All points of the clique block."""
        return PointSet.from_indices(self.matroid.size, range(self.block_start, self.twin_start))

    def twin_circuit(self, e: int) -> PointSet:
        """``{e, e'}`` with the star."""
        return self.star | PointSet.from_indices(self.matroid.size, [e, self.twin(e)])


def build_gadget(
    source: BinaryMatroid,
    target: BinaryMatroid,
    n: int | None = None,
) -> GadgetInstance:
    """Construct M* for a loopless source and a loopless target containing M(K_n), n >= 5.

    Without ``n`` the largest clique copy in the target is used.
    """
    if source.loops or target.loops:
        raise PreconditionError("source and target must be loopless")
    clique = largest_clique_copy(target) if n is None else find_clique_copy(target, n)
    if clique is None or clique.n < MIN_GADGET_CLIQUE:
        raise PreconditionError(f"target holds no copy of M(K_{n or MIN_GADGET_CLIQUE})")
    size = clique.n
    last = size - 1
    star_pairs = [(i, last) for i in range(last)]
    block_pairs = tuple(star_pairs + [p for p in combinations(range(size), 2) if p[1] != last])
    shift = source.ambient_dim
    dim = shift + size

    def block_vector(vertices: tuple[int, ...]) -> BitVec:
        return BitVec.from_indices(dim, (shift + i for i in vertices))

    lifted = [BitVec(dim, p.bits) for p in source.points]
    star_sum = block_vector(tuple(range(GADGET_STAR_SIZE)))
    points = lifted + [block_vector(p) for p in block_pairs] + [p + star_sum for p in lifted]
    try:
        matroid = BinaryMatroid(points, ambient_dim=dim)
    except SimplicityError as exc:
        raise ConstructionError(f"gadget points collide: {exc}") from exc
    gadget = GadgetInstance(
        source=source,
        target=target,
        clique=clique,
        matroid=matroid,
        block_pairs=block_pairs,
    )
    expected_basis = list(source.basis) + [gadget.point_of_pair(i, last) for i in range(last)]
    if list(matroid.basis) != expected_basis:
        raise ConstructionError("gadget basis is not a basis of M with the star")
    for e in range(source.size):
        if not is_circuit(matroid, gadget.twin_circuit(e)):
            raise ConstructionError(f"twin of point {e} does not close a circuit with the star")
    logger.info(
        event="Built gadget",
        source_points=source.size,
        clique_size=size,
        gadget_points=matroid.size,
        gadget_rank=matroid.rank,
    )
    return gadget


def _check_source_hom(g: GadgetInstance, tau: MatroidHom) -> None:
    if tau.domain != g.source or tau.codomain != clique_matroid(4):
        raise ArgumentError("tau must map the gadget source into M(K_4)")


def _clique_sum(g: GadgetInstance, vertices: tuple[int, ...]) -> BitVec:
    total = BitVec.zero(g.target.ambient_dim)
    for i in vertices:
        total = total + g.clique.vertices[i]
    return total


def lift_hom(g: GadgetInstance, tau: MatroidHom) -> MatroidHom:
    """s(tau): tau on M, ``u_i + u_j -> x_i + x_j`` on the block, extended linearly."""
    _check_source_hom(g, tau)

    def wanted(index: int) -> int:
        if index < g.block_start:
            return g.clique.point(*K4_EDGES[tau.image[index]])
        return g.clique.point(*g.pair_of(index))

    lifted = linear_extension(g.matroid, g.target, [wanted(i) for i in g.matroid.basis])
    if lifted is None:
        raise InternalError("lifted map leaves the target's points")
    star_sum = _clique_sum(g, tuple(range(GADGET_STAR_SIZE)))
    for e in range(g.source.size):
        if lifted.image[e] != wanted(e):
            raise InternalError(f"lift does not agree with tau at point {e}")
        if lifted.vector(g.twin(e)) != lifted.vector(e) + star_sum:
            raise InternalError(f"lift of twin {e}' is not s(e) plus the star sum")
    return lifted


def _star_labels(g: GadgetInstance, sigma: MatroidHom) -> list[BitVec]:
    """``y_i = sigma(u_i + u_{n-1})`` with ``y_{n-1} = 0``."""
    labels = [sigma.vector(g.point_of_pair(i, g.last)) for i in range(g.last)]
    return [*labels, BitVec.zero(g.target.ambient_dim)]


def restrict_hom(g: GadgetInstance, sigma: MatroidHom) -> MatroidHom:
    """sigma on the points of M, read in M(K_4) through sigma's own block labelling."""
    if sigma.domain != g.matroid or sigma.codomain != g.target:
        raise ArgumentError("sigma must map the gadget into its target")
    labels = _star_labels(g, sigma)
    lookup = {labels[a] + labels[b]: k for k, (a, b) in enumerate(K4_EDGES)}
    image = []
    for e in range(g.source.size):
        k = lookup.get(sigma.vector(e))
        if k is None:
            raise InternalError(f"point {e} is not sent into the 4-clique spanned by the star")
        image.append(k)
    if not is_homomorphism(g.source, clique_matroid(4), image):
        raise InternalError("restriction to M is not a homomorphism into M(K_4)")
    return MatroidHom(g.source, clique_matroid(4), image, check=False)


class CrossingCocircuit(BaseModel):
    """How an admissible recolouring step meets the clique block."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    cocircuit: PointSet
    constant: BitVec
    case: CrossingCase
    side: tuple[int, ...]
    constant_matches: bool


def _classify(
    g: GadgetInstance,
    labels: list[BitVec],
    cocircuit: PointSet,
    constant: BitVec,
) -> CrossingCocircuit:
    in_block = [i for i in cocircuit if g.pair_of(i) is not None]
    if not in_block:
        return CrossingCocircuit(
            cocircuit=cocircuit,
            constant=constant,
            case=CrossingCase.EMPTY,
            side=(),
            constant_matches=True,
        )
    moved = {i for i in range(g.last) if g.point_of_pair(i, g.last) in cocircuit}
    cut = {g.point_of_pair(i, j) for i, j in g.block_pairs if (i in moved) != (j in moved)}
    sides = (tuple(sorted(moved)), tuple(v for v in range(g.n) if v not in moved))
    side = min(sides, key=lambda s: (len(s), s))
    case, matches = CrossingCase.UNEXPECTED, False
    if cut == set(in_block) and len(side) == 1:
        case, matches = CrossingCase.STAR, labels[side[0]] + constant not in labels
    elif cut == set(in_block) and len(side) == 2:
        case, matches = CrossingCase.PAIR, constant == labels[side[0]] + labels[side[1]]
    return CrossingCocircuit(
        cocircuit=cocircuit,
        constant=constant,
        case=case,
        side=side,
        constant_matches=matches,
    )


def classify_crossing_cocircuits(
    g: GadgetInstance,
    sigma: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> list[CrossingCocircuit]:
    """Every admissible step at ``sigma``, classified by its restriction to the block.

    The block part of a cocircuit is a cut of K_n; its smaller side is a single vertex
    (star), two vertices (pair), or anything else (unexpected).
    """
    labels = _star_labels(g, sigma)
    result = [
        _classify(g, labels, cocircuit, constant)
        for cocircuit, constant, _ in cocircuit_shifts(sigma, max_rank=max_rank)
    ]
    unexpected = sum(r.case == CrossingCase.UNEXPECTED for r in result)
    if unexpected:
        logger.error(event="Unexpected crossing cocircuits", count=unexpected)
    return result


def _is_embedding(tau: MatroidHom) -> bool:
    """Injective on points and of full rank."""
    size = tau.domain.size
    return len(set(tau.image)) == size and (
        rank_of(tau.vector(e) for e in range(size)) == tau.domain.rank
    )


def clique_embeddings(n: int, graph: SimpleGraph) -> set[tuple[int, ...]]:
    """Images of the homs M(K_n) -> M(G) induced by mapping K_n onto an n-clique of G."""
    k = complete_graph(n)
    found: set[tuple[int, ...]] = set()
    # cliques come out in order of size
    for clique in nx.enumerate_all_cliques(graph.to_networkx()):
        if len(clique) > n:
            break
        if len(clique) == n:
            for order in permutations(clique):
                found.add(induced_graph_hom(GraphColouring(k, graph, order)).image)
    return found


def verify_k5auto(n: int, graph: SimpleGraph, *, max_homs: int = DEFAULT_MAX_HOMS) -> bool:
    """Every hom M(K_n) -> M(G) is an isomorphism onto a copy of M(K_n).

    The homs passing the rank test must be exactly those induced by the n-cliques of G,
    which networkx finds without looking at the matroids.
    """
    if n < 3:
        raise ArgumentError(f"{n=} is too small for edges to determine vertices")
    if n < MIN_GADGET_CLIQUE:
        logger.warning(event="Clique below the automorphism bound", n=n)
    homs = enumerate_homs(clique_matroid(n), graphic(graph), max_homs=max_homs)
    embeddings = {tau.image for tau in homs if _is_embedding(tau)}
    from_cliques = clique_embeddings(n, graph)
    if embeddings != from_cliques:
        raise InternalError(
            f"rank test finds {len(embeddings)} embeddings, the cliques of G give "
            f"{len(from_cliques)}",
        )
    result = len(embeddings) == len(homs)
    logger.debug(
        event="Checked clique homomorphisms",
        n=n,
        homs=len(homs),
        embeddings=len(embeddings),
        result=result,
    )
    return result


def _translate_constant(g: GadgetInstance, constant: BitVec) -> BitVec:
    """A vector of M(K_4)'s point space moved to the clique copy, ``u_i -> x_i``."""
    return _clique_sum(g, constant.support())


def lifted_edge_path(
    g: GadgetInstance,
    tau: MatroidHom,
    tau_prime: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> RecolPath:
    """Path from s(tau) to s(tau') for an edge ``tau ~ tau'``, through ``C`` and its twins."""
    witness = adjacent(tau, tau_prime)
    if witness is None:
        raise ArgumentError("tau and tau_prime are not adjacent")
    cocycle = PointSet.from_indices(
        g.matroid.size,
        [*witness.cocircuit, *(g.twin(e) for e in witness.cocircuit)],
    )
    indicator = BitVec(g.matroid.size, cocycle.mask)
    if not is_cocycle(g.matroid, cocycle) or not in_span(
        g.matroid.representation.transpose(),
        indicator,
    ):
        raise InternalError(f"{cocycle} with its twins is not a cocycle of the gadget")
    constant = _translate_constant(g, witness.constant)
    current = lift_hom(g, tau)
    homs = [current]
    steps = []
    for part in decompose_cocycle(g.matroid, cocycle, max_rank=max_rank):
        current = shift_hom(current, part, constant)
        homs.append(current)
        steps.append(CocircuitWitness(cocircuit=part, constant=constant))
    if current != lift_hom(g, tau_prime):
        raise InternalError("lifted edge path does not reach s(tau')")
    return RecolPath(homs=tuple(homs), steps=tuple(steps))


def _k4_transpositions() -> list[MatroidHom]:
    k4 = complete_graph(4)
    result = []
    for a, b in K4_EDGES:
        perm = list(range(4))
        perm[a], perm[b] = b, a
        result.append(induced_graph_hom(GraphColouring(k4, k4, perm)))
    return result


def restricted_edge_path(
    g: GadgetInstance,
    sigma: MatroidHom,
    sigma_prime: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
    max_states: int = DEFAULT_MAX_STATES,
) -> tuple[RecolPath, PathMethod]:
    """Path in Col(M, M(K_4)) between the restrictions of an edge ``sigma ~ sigma'``.

    The restrictions are equal, adjacent, or differ by a transposition of K_4 (walked by
    lifting); anything else falls back to search.
    """
    alpha, alpha_prime = restrict_hom(g, sigma), restrict_hom(g, sigma_prime)
    if alpha == alpha_prime:
        return RecolPath(homs=(alpha,), steps=()), PathMethod.CONSTRUCTIVE
    witness = adjacent(alpha, alpha_prime)
    if witness is not None:
        return RecolPath(homs=(alpha, alpha_prime), steps=(witness,)), PathMethod.CONSTRUCTIVE
    k4_identity = identity(clique_matroid(4))
    for transposition in _k4_transpositions():
        if compose(transposition, alpha) == alpha_prime:
            return (
                lift_walk(alpha, k4_identity, transposition, max_rank=max_rank),
                PathMethod.CONSTRUCTIVE,
            )
    path = recol_decide(alpha, alpha_prime, max_rank=max_rank, max_states=max_states)
    if path is None:
        raise InternalError("restrictions of adjacent gadget homs are disconnected")
    return path, PathMethod.SEARCH


GadgetEdge = tuple[tuple[int, ...], tuple[int, ...]]


def _edge_key(first: tuple[int, ...], second: tuple[int, ...]) -> GadgetEdge:
    return (first, second) if first <= second else (second, first)


def _orbit_representatives(
    edges: Iterable[GadgetEdge],
    symmetries: Sequence[tuple[int, ...]],
) -> list[GadgetEdge]:
    """The least edge of each orbit met, with ``symmetries`` acting on the image arrays."""
    covered: set[GadgetEdge] = set()
    representatives = []
    for edge in sorted(edges):
        if edge in covered:
            continue
        representatives.append(edge)
        for perm in symmetries:
            covered.add(
                _edge_key(tuple(perm[j] for j in edge[0]), tuple(perm[j] for j in edge[1])),
            )
    return representatives


class _EdgeOutcome(BaseModel):
    ok: bool
    method: PathMethod | None = None
    case: CrossingCase | None = None


def verify_reduction(
    source: BinaryMatroid,
    target: BinaryMatroid,
    n: int | None = None,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
    max_rank: int = DEFAULT_MAX_RANK,
    max_states: int = DEFAULT_MAX_STATES,
    scheduler: str | None = None,
) -> ReductionReport:
    """Compare connectivity in Col(M, M(K_4)) with connectivity of the lifts in Col(M*, N).

    Every edge of Col(M, M(K_4)) is checked with its lifted edge path. Edges met while
    exploring the lifted components are checked with their restricted edge path, one per
    orbit under the automorphisms of N: composing with an automorphism changes neither the
    restriction to M nor how a step crosses the clique block.
    """
    start_time = time.perf_counter()
    scheduler = scheduler or default_scheduler()
    g = build_gadget(source, target, n)
    k4 = clique_matroid(4)
    col = build_col_graph(source, k4, max_homs=max_homs, max_rank=max_rank)
    homs = col.homs
    source_component = {}
    for k, component in enumerate(col.components()):
        for i in component:
            source_component[i] = k

    lifted = [lift_hom(g, tau) for tau in homs]
    gadget_edges: dict[GadgetEdge, CocircuitWitness] = {}

    def expand(image: tuple[int, ...]) -> list[tuple[tuple[int, ...], CocircuitWitness]]:
        sigma = MatroidHom(g.matroid, target, image, check=False)
        moves = [(s.image, w) for s, w in neighbor_moves(sigma, max_rank=max_rank)]
        for other, witness in moves:
            gadget_edges.setdefault(_edge_key(image, other), witness)
        return moves

    search: BreadthFirstSearch = BreadthFirstSearch(expand, max_states=max_states)
    lifted_component: dict[tuple[int, ...], int] = {}
    found_components = 0
    for s in lifted:
        if s.image in lifted_component:
            continue
        for image in search.component(s.image):
            lifted_component[image] = found_components
        found_components += 1

    symmetries = [alpha.image for alpha in automorphisms(target, max_homs=max_homs)]
    report = ReductionReport(
        source_points=source.size,
        gadget_points=g.matroid.size,
        clique_size=g.n,
        source_homs=len(homs),
        gadget_edges=len(gadget_edges),
        automorphisms=len(symmetries),
    )
    for i, j in combinations(range(len(homs)), 2):
        report.pairs_checked += 1
        same_source = source_component[i] == source_component[j]
        same_lift = lifted_component[lifted[i].image] == lifted_component[lifted[j].image]
        if same_source != same_lift:
            report.mismatches.append((i, j))

    def check_source_edge(edge: tuple[int, int]) -> _EdgeOutcome:
        try:
            path = lifted_edge_path(g, homs[edge[0]], homs[edge[1]], max_rank=max_rank)
        except RecolouringError as exc:
            logger.error(event="Lifted edge path failed", edge=edge, error=str(exc))
            return _EdgeOutcome(ok=False)
        return _EdgeOutcome(ok=validate_path(path))

    def check_gadget_edge(edge: GadgetEdge) -> _EdgeOutcome:
        sigma = MatroidHom(g.matroid, target, edge[0], check=False)
        sigma_prime = MatroidHom(g.matroid, target, edge[1], check=False)
        witness = gadget_edges[edge]
        crossing = _classify(g, _star_labels(g, sigma), witness.cocircuit, witness.constant)
        if not crossing.constant_matches:
            logger.error(event="Crossing step with a foreign constant", case=crossing.case)
        try:
            path, method = restricted_edge_path(
                g,
                sigma,
                sigma_prime,
                max_rank=max_rank,
                max_states=max_states,
            )
        except RecolouringError as exc:
            logger.error(event="Restricted edge path failed", error=str(exc))
            return _EdgeOutcome(ok=False, case=crossing.case)
        return _EdgeOutcome(
            ok=crossing.constant_matches and validate_path(path),
            method=method,
            case=crossing.case,
        )

    source_outcomes: list[_EdgeOutcome] = (
        dask.bag.from_sequence(list(col.edges), npartitions=min(len(col.edges), 16))
        .map(check_source_edge)
        .compute(scheduler=scheduler)
        if col.edges
        else []
    )
    representatives = _orbit_representatives(gadget_edges, symmetries)
    gadget_outcomes: list[_EdgeOutcome] = (
        dask.bag.from_sequence(representatives, npartitions=min(len(representatives), 16))
        .map(check_gadget_edge)
        .compute(scheduler=scheduler)
        if representatives
        else []
    )

    report.lifted_edge_paths = len(source_outcomes)
    report.lifted_edge_failures = sum(not o.ok for o in source_outcomes)
    report.restricted_edges = len(gadget_outcomes)
    report.restricted_edge_failures = sum(not o.ok for o in gadget_outcomes)
    report.constructive_paths = sum(o.method == PathMethod.CONSTRUCTIVE for o in gadget_outcomes)
    report.searched_paths = sum(o.method == PathMethod.SEARCH for o in gadget_outcomes)
    for o in gadget_outcomes:
        if o.case is not None:
            report.crossing_cases[o.case.value] = report.crossing_cases.get(o.case.value, 0) + 1

    logger.info(
        event="Verify reduction: END",
        source_homs=len(homs),
        gadget_edges=report.gadget_edges,
        edge_orbits=report.restricted_edges,
        mismatches=len(report.mismatches),
        lifted_edge_failures=report.lifted_edge_failures,
        restricted_edge_failures=report.restricted_edge_failures,
        elapsed_time_secs=time.perf_counter() - start_time,
    )
    return report
