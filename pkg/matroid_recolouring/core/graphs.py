"""Simple graphs, graph colourings and their single-vertex and Kempe recolouring graphs."""
from collections.abc import Iterable, Sequence

import networkx as nx
import structlog
from networkx.utils import UnionFind
from pydantic import BaseModel, ConfigDict

from matroid_recolouring.constants import DEFAULT_MAX_HOMS, DEFAULT_MAX_STATES
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.search import BreadthFirstSearch
from matroid_recolouring.errors import (
    ArgumentError,
    CapacityError,
    DimensionError,
    DomainMismatchError,
)

logger = structlog.getLogger()


class SimpleGraph:
    """An undirected graph on ``0..n-1`` without multiple edges.

    Edges keep their first-seen order, normalized to ``(min, max)``. A reflexive graph has a
    loop at every vertex; loops are not stored in ``edges``. Vertices of decision graphs carry
    a ``BitVec`` payload.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        *,
        reflexive: bool = False,
        payload: Sequence[BitVec] | None = None,
    ) -> None:
        if n < 0:
            raise ArgumentError(f"{n=} must be non-negative")
        normalized: dict[tuple[int, int], None] = {}
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"edge {(u, v)} outside vertex range {n=}")
            if u == v:
                if not reflexive:
                    raise ArgumentError(f"self-loop at {u} in a non-reflexive graph")
                continue
            normalized.setdefault((min(u, v), max(u, v)), None)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        self.reflexive = reflexive
        self.payload: tuple[BitVec, ...] | None = None
        self._vertex_of: dict[BitVec, int] = {}
        if payload is not None:
            payload = tuple(payload)
            if len(payload) != n:
                raise DimensionError(f"payload of size {len(payload)} for {n=} vertices")
            if len({p.length for p in payload}) > 1:
                raise DimensionError("payload vectors must share one length")
            self._vertex_of = {p: i for i, p in enumerate(payload)}
            if len(self._vertex_of) != n:
                raise ArgumentError("payload vectors must be distinct")
            self.payload = payload
        adjacency: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        self.adjacency: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adjacency)
        self.edge_index: dict[tuple[int, int], int] = {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        """Adjacency, counting the loops of a reflexive graph."""
        if u == v:
            return self.reflexive
        return v in self.adjacency[u]

    def index_of_edge(self, u: int, v: int) -> int:
        """Position of the edge ``uv`` in ``edges``."""
        try:
            return self.edge_index[(min(u, v), max(u, v))]
        except KeyError:
            raise ArgumentError(f"{(u, v)} is not an edge") from None

    def vertex_of(self, vector: BitVec) -> int | None:
        """The vertex carrying ``vector``, if any."""
        return self._vertex_of.get(vector)

    @property
    def vector_length(self) -> int:
        """Length of the payload vectors."""
        if self.payload is None:
            raise ArgumentError("graph vertices are not vector-labelled")
        return self.payload[0].length if self.payload else 0

    def degree_sequence(self) -> list[int]:
        """Degrees in non-increasing order."""
        return sorted((len(a) for a in self.adjacency), reverse=True)

    def to_networkx(self) -> nx.Graph:
        """Equivalent networkx graph; reflexive graphs get explicit self-loops."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        if self.reflexive:
            graph.add_edges_from((v, v) for v in range(self.n))
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimpleGraph":  # noqa: ANN102
        """Relabel the nodes of ``graph`` to ``0..n-1`` in sorted order."""
        labels = {node: i for i, node in enumerate(sorted(graph.nodes))}
        loops = nx.number_of_selfloops(graph)
        if loops not in (0, len(labels)):
            raise ArgumentError("only all-or-nothing self-loops are supported")
        edges = sorted(
            (min(labels[u], labels[v]), max(labels[u], labels[v]))
            for u, v in graph.edges
            if u != v
        )
        return cls(len(labels), edges, reflexive=loops > 0)

    def _key(self) -> tuple:
        return (self.n, self.edges, self.reflexive, self.payload)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={list(self.edges)}, reflexive={self.reflexive})"


def is_graph_hom(source: SimpleGraph, target: SimpleGraph, image: Sequence[int]) -> bool:
    """True iff ``image`` maps every edge of ``source`` onto an edge of ``target``."""
    if len(image) != source.n or any(not 0 <= w < target.n for w in image):
        return False
    return all(target.has_edge(image[u], image[v]) for u, v in source.edges)


class GraphColouring:
    """A graph homomorphism ``source -> target``, stored as an image array."""

    __slots__ = ("source", "target", "image")

    def __init__(self, source: SimpleGraph, target: SimpleGraph, image: Sequence[int]) -> None:
        image = tuple(image)
        if not is_graph_hom(source, target, image):
            raise ArgumentError(f"{image=} is not a homomorphism")
        self.source = source
        self.target = target
        self.image = image

    def colour(self, vertex: int) -> BitVec:
        """Vector colour of ``vertex`` in a vector-labelled target."""
        if self.target.payload is None:
            raise ArgumentError("target is not vector-labelled")
        return self.target.payload[self.image[vertex]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphColouring):
            return NotImplemented
        return (
            self.image == other.image
            and self.source == other.source
            and self.target == other.target
        )

    def __lt__(self, other: "GraphColouring") -> bool:
        return self.image < other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"GraphColouring({list(self.image)})"


class KempeWitness(BaseModel):
    """A Kempe move ``psi = phi + b on U``; ``b_prime`` is the least colour of ``U`` under phi."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    b: BitVec
    b_prime: BitVec
    vertices: tuple[int, ...]


class KempePath(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    colourings: tuple[GraphColouring, ...]
    steps: tuple[KempeWitness, ...]

    @property
    def length(self) -> int:
        """Number of moves."""
        return len(self.steps)


class ColouringGraph(BaseModel):
    """An explicit gCol or kCol graph; ``labels[k]`` describes ``edges[k]``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    colourings: tuple[GraphColouring, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]

    def to_networkx(self) -> nx.Graph:
        """Vertices are colouring indices."""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.colourings)))
        graph.add_edges_from(self.edges)
        return graph

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least member."""
        return sorted(sorted(c) for c in nx.connected_components(self.to_networkx()))


def _check_same_maps(phi: GraphColouring, psi: GraphColouring) -> None:
    if phi.source != psi.source or phi.target != psi.target:
        raise DomainMismatchError("colourings have different source or target graphs")


def _require_vectors(target: SimpleGraph) -> None:
    if target.payload is None:
        raise ArgumentError("Kempe moves need a vector-labelled target graph")


def graph_homs(
    source: SimpleGraph,
    target: SimpleGraph,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
) -> list[GraphColouring]:
    """All homomorphisms ``source -> target`` in lexicographic order of image arrays."""
    if target.n**source.n > max_homs:
        raise CapacityError(f"{target.n}^{source.n} candidate maps exceed {max_homs=}")
    earlier = [sorted(u for u in source.adjacency[v] if u < v) for v in range(source.n)]
    image = [0] * source.n
    found: list[tuple[int, ...]] = []

    def extend(v: int) -> None:
        if v == source.n:
            found.append(tuple(image))
            return
        for w in range(target.n):
            if all(target.has_edge(image[u], w) for u in earlier[v]):
                image[v] = w
                extend(v + 1)

    extend(0)
    logger.debug(event="Enumerated graph homomorphisms", count=len(found))
    return [GraphColouring(source, target, im) for im in found]


def gcol_adjacent(phi: GraphColouring, psi: GraphColouring) -> bool:
    """Single-vertex recolouring adjacency."""
    _check_same_maps(phi, psi)
    return sum(a != b for a, b in zip(phi.image, psi.image)) == 1


def build_gcol_graph(
    source: SimpleGraph,
    target: SimpleGraph,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
) -> ColouringGraph:
    """The explicit graph gCol(source, target)."""
    colourings = graph_homs(source, target, max_homs=max_homs)
    index = {c.image: i for i, c in enumerate(colourings)}
    edges: list[tuple[int, int]] = []
    labels: list[str] = []
    for i, phi in enumerate(colourings):
        for v in range(source.n):
            for w in range(phi.image[v] + 1, target.n):
                j = index.get(phi.image[:v] + (w,) + phi.image[v + 1 :])
                if j is not None:
                    edges.append((min(i, j), max(i, j)))
                    labels.append(f"v{v}")
    order = sorted(range(len(edges)), key=edges.__getitem__)
    return ColouringGraph(
        colourings=tuple(colourings),
        edges=tuple(edges[k] for k in order),
        labels=tuple(labels[k] for k in order),
    )


def two_colour_components(phi: GraphColouring, b: BitVec) -> list[tuple[int, ...]]:
    """Components of the subgraphs induced on the colour pairs ``{x, x + b}``.

    Every source vertex lies in exactly one component.
    """
    _require_vectors(phi.target)
    colours = [phi.colour(v) for v in range(phi.source.n)]
    pair = {BitVec.zero(b.length), b}
    forest = UnionFind(range(phi.source.n))
    for u, v in phi.source.edges:
        if colours[u] + colours[v] in pair:
            forest.union(u, v)
    return sorted(tuple(sorted(c)) for c in forest.to_sets())


def _toggle(phi: GraphColouring, b: BitVec, vertices: Iterable[int]) -> tuple[int, ...] | None:
    target = phi.target
    image = list(phi.image)
    for v in vertices:
        w = target.vertex_of(phi.colour(v) + b)
        if w is None:
            return None
        image[v] = w
    return tuple(image)


def kempe_moves(phi: GraphColouring) -> list[tuple[GraphColouring, KempeWitness]]:
    """Every valid colouring one Kempe move away from ``phi``, with witnesses, by image."""
    target = phi.target
    _require_vectors(target)
    moves: dict[tuple[int, ...], KempeWitness] = {}
    for b in sorted(p for p in target.payload if p):
        for component in two_colour_components(phi, b):
            image = _toggle(phi, b, component)
            if image is None or image in moves or not is_graph_hom(phi.source, target, image):
                continue
            b_prime = min(phi.colour(v) for v in component)
            moves[image] = KempeWitness(b=b, b_prime=b_prime, vertices=component)
    return [
        (GraphColouring(phi.source, target, image), moves[image]) for image in sorted(moves)
    ]


def kempe_neighbors(phi: GraphColouring) -> list[GraphColouring]:
    """Colourings adjacent to ``phi`` in kCol."""
    return [psi for psi, _ in kempe_moves(phi)]


def kempe_adjacent(phi: GraphColouring, psi: GraphColouring) -> KempeWitness | None:
    """The Kempe move turning ``phi`` into ``psi``, if there is one."""
    _check_same_maps(phi, psi)
    _require_vectors(phi.target)
    changed = [v for v in range(phi.source.n) if phi.image[v] != psi.image[v]]
    if not changed:
        return None
    b = phi.colour(changed[0]) + psi.colour(changed[0])
    if any(phi.colour(v) + psi.colour(v) != b for v in changed):
        return None
    component = next(c for c in two_colour_components(phi, b) if changed[0] in c)
    if set(component) != set(changed):
        return None
    return KempeWitness(
        b=b,
        b_prime=min(phi.colour(v) for v in component),
        vertices=component,
    )


def kempe_decide(
    phi: GraphColouring,
    psi: GraphColouring,
    *,
    max_states: int = DEFAULT_MAX_STATES,
) -> KempePath | None:
    """Shortest Kempe path from ``phi`` to ``psi`` in kCol, or None."""
    _check_same_maps(phi, psi)
    _require_vectors(phi.target)
    source, target = phi.source, phi.target

    def expand(image: tuple[int, ...]) -> list[tuple[tuple[int, ...], KempeWitness]]:
        moves = kempe_moves(GraphColouring(source, target, image))
        return [(colouring.image, witness) for colouring, witness in moves]

    steps = BreadthFirstSearch(expand, max_states=max_states).path(phi.image, psi.image)
    if steps is None:
        return None
    return KempePath(
        colourings=tuple(GraphColouring(source, target, image) for image, _ in steps),
        steps=tuple(witness for _, witness in steps[1:]),
    )


def build_kcol_graph(
    source: SimpleGraph,
    target: SimpleGraph,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
) -> ColouringGraph:
    """The explicit graph kCol(source, target) over a vector-labelled target."""
    _require_vectors(target)
    colourings = graph_homs(source, target, max_homs=max_homs)
    index = {c.image: i for i, c in enumerate(colourings)}
    found: dict[tuple[int, int], str] = {}
    for i, phi in enumerate(colourings):
        for psi, witness in kempe_moves(phi):
            j = index[psi.image]
            found.setdefault((min(i, j), max(i, j)), f"{witness.b} on {list(witness.vertices)}")
    edges = sorted(found)
    return ColouringGraph(
        colourings=tuple(colourings),
        edges=tuple(edges),
        labels=tuple(found[e] for e in edges),
    )
