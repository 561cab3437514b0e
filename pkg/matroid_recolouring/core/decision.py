"""Decision graphs, the Tutte connection and transfers between matroid and Kempe recolouring."""
from collections.abc import Sequence

import networkx as nx
import structlog

from matroid_recolouring.constants import DEFAULT_MAX_HOMS, DEFAULT_MAX_RANK, DEFAULT_MAX_STATES
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.graphs import (
    GraphColouring,
    KempePath,
    KempeWitness,
    SimpleGraph,
    build_kcol_graph,
    graph_homs,
    is_graph_hom,
    two_colour_components,
)
from matroid_recolouring.core.hom import MatroidHom, enumerate_homs
from matroid_recolouring.core.matroid import (
    BinaryMatroid,
    PointSet,
    decompose_cocycle,
    graphic,
)
from matroid_recolouring.core.recolor import (
    CocircuitWitness,
    RecolPath,
    adjacent,
    component_images,
)
from matroid_recolouring.errors import (
    ArgumentError,
    CapacityError,
    InternalError,
    PreconditionError,
)

logger = structlog.getLogger()


class DecisionGraph:
    """D(N, A): the graph on GF(2)^m where ``v ~ w`` iff ``v + w`` is a point of N.

    Vertex ``i`` carries the vector whose bits are ``i``. In the universal graph the
    coordinates are those of N's cached basis; otherwise they are N's ambient coordinates.
    """

    def __init__(
        self,
        matroid: BinaryMatroid,
        *,
        universal: bool = True,
        max_rank: int = DEFAULT_MAX_RANK,
    ) -> None:
        dim = matroid.rank if universal else matroid.ambient_dim
        if dim > max_rank:
            raise CapacityError(f"decision graph on 2^{dim} vertices exceeds {max_rank=}")
        self.matroid = matroid
        self.universal = universal
        self.dim = dim
        if universal:
            self.point_vectors = tuple(BitVec(dim, c) for c in matroid.coordinates)
        else:
            self.point_vectors = matroid.points
        self._point_of = {v: i for i, v in enumerate(self.point_vectors)}
        values = [v.bits for v in self.point_vectors]
        edges = [
            (u, u ^ value)
            for u in range(1 << dim)
            for value in values
            if u < u ^ value
        ]
        self.graph = SimpleGraph(
            1 << dim,
            sorted(edges),
            reflexive=matroid.allows_loop and bool(matroid.loops),
            payload=[BitVec(dim, i) for i in range(1 << dim)],
        )
        logger.debug(
            event="Built decision graph",
            universal=universal,
            vertices=self.graph.n,
            edges=len(self.graph.edges),
        )

    def vector(self, vertex: int) -> BitVec:
        """Payload of ``vertex``."""
        return BitVec(self.dim, vertex)

    def point_of(self, vector: BitVec) -> int | None:
        """The point of N represented by ``vector``, if any."""
        return self._point_of.get(vector)

    def to_ambient(self, vector: BitVec) -> BitVec:
        """A decision-graph vector as a vector of N's ambient space."""
        return self.matroid.from_coordinates(vector.bits) if self.universal else vector

    def from_ambient(self, vector: BitVec) -> BitVec:
        """An ambient vector of N's point space in decision-graph coordinates."""
        if not self.universal:
            return vector
        combo = self.matroid.coordinates_of(vector)
        if combo is None:
            raise ArgumentError(f"{vector} is outside the point space")
        return BitVec(self.dim, combo)

    def is_complete(self) -> bool:
        """True iff every nonzero vector is a point, i.e. N is a projective geometry."""
        return sorted(v.bits for v in self.point_vectors if v) == list(range(1, 1 << self.dim))


def decision_graph(
    matroid: BinaryMatroid,
    *,
    universal: bool = True,
    max_rank: int = DEFAULT_MAX_RANK,
) -> DecisionGraph:
    """D_u(N) or D(N, A) for the stored representation."""
    return DecisionGraph(matroid, universal=universal, max_rank=max_rank)


class TutteContext:
    """A rooted BFS spanning tree of a connected graph, children taken in index order."""

    def __init__(self, graph: SimpleGraph, root: int = 0) -> None:
        if graph.n == 0 or not 0 <= root < graph.n:
            raise PreconditionError(f"{root=} is not a vertex")
        network = graph.to_networkx()
        if not nx.is_connected(network):
            raise PreconditionError("the Tutte connection needs a connected graph")
        self.graph = graph
        self.root = root
        self.parent = [-1] * graph.n
        self.order = [root]
        for u, v in nx.bfs_edges(network, root, sort_neighbors=sorted):
            self.parent[v] = u
            self.order.append(v)


def _check_graphic_domain(tau: MatroidHom, graph: SimpleGraph) -> None:
    if tau.domain != graphic(graph):
        raise ArgumentError("domain of tau is not the cycle matroid of the context graph")


def tutte_phi(
    tau: MatroidHom,
    ctx: TutteContext,
    b: BitVec,
    decision: DecisionGraph,
) -> GraphColouring:
    """phi with ``phi(root) = b`` and ``phi(v) = phi(parent) + tau(parent v)`` down the tree."""
    _check_graphic_domain(tau, ctx.graph)
    if tau.codomain != decision.matroid:
        raise ArgumentError("tau does not map into the decision graph's matroid")
    if b.length != decision.dim:
        raise ArgumentError(f"{b=} is not a vertex of the decision graph")
    colours = [b] * ctx.graph.n
    for v in ctx.order[1:]:
        u = ctx.parent[v]
        edge = ctx.graph.index_of_edge(u, v)
        colours[v] = colours[u] + decision.point_vectors[tau.image[edge]]
    image = [c.bits for c in colours]
    if not is_graph_hom(ctx.graph, decision.graph, image):
        raise InternalError("tree colouring is not a homomorphism into the decision graph")
    return GraphColouring(ctx.graph, decision.graph, image)


def tutte_tau(phi: GraphColouring, decision: DecisionGraph) -> MatroidHom:
    """``tau(uv) = phi(u) + phi(v)``."""
    if phi.target != decision.graph:
        raise ArgumentError("phi does not colour with the decision graph")
    image = []
    for u, v in phi.source.edges:
        point = decision.point_of(phi.colour(u) + phi.colour(v))
        if point is None:
            raise ArgumentError(f"edge {(u, v)} is not mapped to an edge of the decision graph")
        image.append(point)
    return MatroidHom(graphic(phi.source), decision.matroid, image)


def phi_fiber_bijection_check(
    graph: SimpleGraph,
    matroid: BinaryMatroid,
    root: int = 0,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
) -> bool:
    """Each root fiber of colourings ``G -> D_u(N)`` is in bijection with Hom(M(G), N)."""
    decision = decision_graph(matroid)
    ctx = TutteContext(graph, root)
    homs = enumerate_homs(graphic(graph), matroid, max_homs=max_homs)
    colourings = graph_homs(graph, decision.graph, max_homs=max_homs)
    fibers: dict[int, set[tuple[int, ...]]] = {v: set() for v in range(decision.graph.n)}
    for phi in colourings:
        fibers[phi.image[root]].add(phi.image)
    for vertex, fiber in fibers.items():
        b = decision.vector(vertex)
        if len(fiber) != len(homs):
            logger.error(event="Fiber size mismatch", b=str(b), fiber=len(fiber), homs=len(homs))
            return False
        images = set()
        for tau in homs:
            phi = tutte_phi(tau, ctx, b, decision)
            if tutte_tau(phi, decision) != tau:
                return False
            images.add(phi.image)
        if images != fiber:
            return False
    return True


def cut(graph: SimpleGraph, vertices: Sequence[int]) -> PointSet:
    """The edge cut delta(U) as a set of points of M(G)."""
    inside = set(vertices)
    return PointSet.from_indices(
        len(graph.edges),
        [i for i, (u, v) in enumerate(graph.edges) if (u in inside) != (v in inside)],
    )


def mk_transfer_to_matroid(
    path: KempePath,
    decision: DecisionGraph,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> RecolPath:
    """A path in Col(M(G), N) between the tau's of the endpoints of a Kempe path.

    A move by ``b`` on ``U`` changes tau by ``b`` exactly on the cocycle delta(U), which is
    recoloured one cocircuit at a time.
    """
    graph = path.colourings[0].source
    domain = graphic(graph)
    current = tutte_tau(path.colourings[0], decision)
    homs = [current]
    steps: list[CocircuitWitness] = []
    for after, witness in zip(path.colourings[1:], path.steps):
        constant = decision.to_ambient(witness.b)
        for part in decompose_cocycle(domain, cut(graph, witness.vertices), max_rank=max_rank):
            image = list(current.image)
            for e in part:
                j = decision.matroid.index_of(current.vector(e) + constant)
                if j is None:
                    raise InternalError(f"recolouring {part} by {witness.b} leaves N")
                image[e] = j
            following = MatroidHom(domain, decision.matroid, image, check=False)
            step = adjacent(current, following)
            if step is None or step.cocircuit != part:
                raise InternalError(f"recolouring {part} by {witness.b} is not an edge")
            homs.append(following)
            steps.append(step)
            current = following
        if current != tutte_tau(after, decision):
            raise InternalError("transferred path lost track of the Kempe path")
    return RecolPath(homs=tuple(homs), steps=tuple(steps))


def mk_transfer_to_kempe(
    tau: MatroidHom,
    tau_prime: MatroidHom,
    ctx: TutteContext,
    decision: DecisionGraph,
) -> KempePath:
    """A Kempe path from phi_0(tau) to phi_0(tau') for an edge of Col(M(G), PG(t-1,2)).

    The side U of the cut not containing the root splits into (b', b'+b)-components; each
    is toggled in turn.
    """
    if not decision.is_complete():
        raise PreconditionError("the codomain must be a projective geometry PG(t-1,2)")
    logger.debug(event="Transfer to Kempe moves", t=decision.dim)
    zero = BitVec.zero(decision.dim)
    phi = tutte_phi(tau, ctx, zero, decision)
    target = tutte_phi(tau_prime, ctx, zero, decision)
    if tau == tau_prime:
        return KempePath(colourings=(phi,), steps=())
    witness = adjacent(tau, tau_prime)
    if witness is None:
        raise ArgumentError("tau and tau_prime are not adjacent")
    b = decision.from_ambient(witness.constant)
    side = [v for v in range(ctx.graph.n) if phi.image[v] != target.image[v]]
    if cut(ctx.graph, side) != witness.cocircuit:
        raise InternalError("the changed vertices do not cut out the edge cocircuit")
    inside = set(side)
    colourings = [phi]
    steps = []
    for component in two_colour_components(phi, b):
        if not inside.intersection(component):
            continue
        if not inside.issuperset(component):
            raise InternalError(f"component {component} crosses the side of the cut")
        current = colourings[-1]
        image = list(current.image)
        for v in component:
            image[v] = (current.colour(v) + b).bits
        if not is_graph_hom(ctx.graph, decision.graph, image):
            raise InternalError(f"toggling component {component} breaks the colouring")
        following = GraphColouring(ctx.graph, decision.graph, image)
        steps.append(
            KempeWitness(
                b=b,
                b_prime=min(current.colour(v) for v in component),
                vertices=component,
            ),
        )
        colourings.append(following)
    if colourings[-1] != target:
        raise InternalError("toggling the components does not reach phi_0(tau')")
    return KempePath(colourings=tuple(colourings), steps=tuple(steps))


def apply_automorphism(phi: GraphColouring, permutation: Sequence[int]) -> GraphColouring:
    """``perm . phi`` for an automorphism ``perm`` of the target graph."""
    target = phi.target
    if sorted(permutation) != list(range(target.n)):
        raise ArgumentError("not a permutation of the target vertices")
    if not is_graph_hom(target, target, permutation):
        raise ArgumentError("permutation is not an automorphism of the target")
    return GraphColouring(phi.source, target, [permutation[w] for w in phi.image])


def mk_equivalence_mismatches(
    graph: SimpleGraph,
    matroid: BinaryMatroid,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
    max_states: int = DEFAULT_MAX_STATES,
) -> int:
    """Root-fixed pairs whose connectivity differs between Col(M(G), N) and kCol(G, D_u(N)).

    Only colourings with the root coloured 0 are compared.
    """
    decision = decision_graph(matroid)
    kcol = build_kcol_graph(graph, decision.graph, max_homs=max_homs)
    kempe_component = {}
    for k, component in enumerate(kcol.components()):
        for i in component:
            kempe_component[kcol.colourings[i].image] = k
    rooted = [phi for phi in kcol.colourings if phi.image[0] == 0]
    taus = {phi.image: tutte_tau(phi, decision) for phi in rooted}
    mismatches = 0
    seen: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
    for phi in rooted:
        tau = taus[phi.image]
        if tau.image not in seen:
            reach = component_images(tau, max_states=max_states)
            for image in reach:
                seen[image] = reach
        reach = seen[tau.image]
        for psi in rooted:
            matroid_connected = taus[psi.image].image in reach
            kempe_connected = kempe_component[phi.image] == kempe_component[psi.image]
            if matroid_connected != kempe_connected:
                mismatches += 1
    if mismatches:
        logger.error(event="Kempe and matroid connectivity disagree", mismatches=mismatches)
    return mismatches
