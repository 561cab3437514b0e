"""Standard graphs and binary matroids."""
from itertools import combinations

import networkx as nx

from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.graphs import SimpleGraph
from matroid_recolouring.core.matroid import BinaryMatroid, from_columns, graphic


def complete_graph(n: int) -> SimpleGraph:
    """K_n."""
    return SimpleGraph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> SimpleGraph:
    """C_n with edges ``(i, i+1)`` then the closing edge."""
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    """The path on ``n`` vertices."""
    return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(a: int, b: int) -> SimpleGraph:
    """K_{a,b} on sides ``0..a-1`` and ``a..a+b-1``."""
    return SimpleGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube_vectors(dim: int) -> list[BitVec]:
    """All vectors of GF(2)^dim, vertex ``i`` carrying the vector with bits ``i``."""
    return [BitVec(dim, i) for i in range(1 << dim)]


def half_cube(n: int) -> SimpleGraph:
    """The half-cube on GF(2)^(n-1): adjacent iff the Hamming distance is 1 or 2."""
    vectors = hypercube_vectors(n - 1)
    edges = [
        (u, v)
        for u, v in combinations(range(len(vectors)), 2)
        if (vectors[u] + vectors[v]).weight in (1, 2)
    ]
    return SimpleGraph(len(vectors), edges, payload=vectors)


def graph_corpus(max_vertices: int, *, connected: bool = True) -> list[SimpleGraph]:
    """Graphs of the networkx atlas with at least one edge and at most ``max_vertices`` vertices."""
    corpus = []
    for graph in nx.graph_atlas_g():
        if graph.number_of_nodes() > max_vertices or graph.number_of_edges() == 0:
            continue
        if connected and not nx.is_connected(graph):
            continue
        corpus.append(SimpleGraph.from_networkx(graph))
    return corpus


def clique_matroid(n: int) -> BinaryMatroid:
    """M(K_n) in its graphic (weight two) representation."""
    return graphic(complete_graph(n))


def compact_clique_matroid(n: int) -> BinaryMatroid:
    """M(K_n) as the weight one then weight two columns of GF(2)^(n-1)."""
    dim = n - 1
    columns = [BitVec.unit(dim, i) for i in range(dim)]
    columns += [BitVec.from_indices(dim, pair) for pair in combinations(range(dim), 2)]
    return BinaryMatroid(columns, ambient_dim=dim)


def looped_clique_matroid(n: int) -> BinaryMatroid:
    """M^l(K_n): M(K_n) with the zero column appended."""
    base = clique_matroid(n)
    return BinaryMatroid(
        [*base.points, BitVec.zero(n)],
        ambient_dim=n,
        allows_loop=True,
    )


def cycle_matroid(n: int) -> BinaryMatroid:
    """M(C_n)."""
    return graphic(cycle_graph(n))


def path_matroid(n: int) -> BinaryMatroid:
    """The free matroid of the path on ``n`` vertices."""
    return graphic(path_graph(n))


def projective_geometry(d: int) -> BinaryMatroid:
    """PG(d,2): the nonzero vectors of GF(2)^(d+1) by integer value."""
    return BinaryMatroid(hypercube_vectors(d + 1)[1:], ambient_dim=d + 1)


def looped_projective_geometry(d: int) -> BinaryMatroid:
    """PG^l(d,2): every vector of GF(2)^(d+1), the zero vector last."""
    vectors = hypercube_vectors(d + 1)
    return BinaryMatroid(vectors[1:] + vectors[:1], ambient_dim=d + 1, allows_loop=True)


def loop_matroid() -> BinaryMatroid:
    """M^l(K_1): a single loop."""
    return from_columns([BitVec.zero(1)], allow_loops=True)


def edge_matroid() -> BinaryMatroid:
    """M(K_2): a single non-loop point."""
    return from_columns([BitVec.unit(1, 0)])
