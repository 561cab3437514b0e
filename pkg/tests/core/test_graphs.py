import networkx as nx
import pytest

from matroid_recolouring.core.catalogue import (
    complete_graph,
    cycle_graph,
    path_graph,
    projective_geometry,
)
from matroid_recolouring.core.decision import decision_graph
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.graphs import (
    GraphColouring,
    SimpleGraph,
    build_gcol_graph,
    build_kcol_graph,
    gcol_adjacent,
    graph_homs,
    is_graph_hom,
    kempe_adjacent,
    kempe_decide,
    kempe_moves,
    kempe_neighbors,
    two_colour_components,
)
from matroid_recolouring.errors import ArgumentError, CapacityError


@pytest.fixture
def k4_with_vectors() -> SimpleGraph:
    # D_u(PG(1,2)): vertices 0..3 carry 00, 10, 01, 11
    return decision_graph(projective_geometry(1)).graph


@pytest.fixture
def edge_colouring(k4_with_vectors) -> GraphColouring:
    return GraphColouring(path_graph(2), k4_with_vectors, (0, 1))


class TestSimpleGraph:
    def test_edges_are_normalized_and_deduplicated(self):
        graph = SimpleGraph(3, [(1, 0), (0, 1), (2, 1)])

        assert graph.edges == ((0, 1), (1, 2))
        assert graph.index_of_edge(2, 1) == 1

    def test_self_loop_needs_reflexive_graph(self):
        with pytest.raises(ArgumentError):
            SimpleGraph(2, [(1, 1)])

        reflexive = SimpleGraph(2, [(1, 1), (0, 1)], reflexive=True)
        assert reflexive.edges == ((0, 1),)
        assert reflexive.has_edge(0, 0)

    def test_edge_outside_vertex_range(self):
        with pytest.raises(ArgumentError):
            SimpleGraph(2, [(0, 2)])

    def test_missing_edge_lookup_raises(self):
        with pytest.raises(ArgumentError):
            path_graph(3).index_of_edge(0, 2)

    def test_networkx_round_trip(self):
        # Arrange
        graph = cycle_graph(5)

        # Act
        back = SimpleGraph.from_networkx(graph.to_networkx())

        # Assert
        assert nx.is_isomorphic(back.to_networkx(), graph.to_networkx())
        assert back.n == 5

    def test_payload_lookup(self, k4_with_vectors):
        assert k4_with_vectors.vertex_of(BitVec.from_str("01")) == 2
        assert k4_with_vectors.vector_length == 2


class TestGraphHomomorphisms:
    @pytest.mark.parametrize(
        ("source", "target", "expected"),
        [
            (complete_graph(4), complete_graph(4), 24),
            (cycle_graph(5), complete_graph(3), 30),
            (cycle_graph(5), complete_graph(4), 240),
        ],
    )
    def test_counts(self, source, target, expected):
        assert len(graph_homs(source, target)) == expected

    def test_cap(self):
        with pytest.raises(CapacityError):
            graph_homs(complete_graph(4), complete_graph(4), max_homs=10)

    def test_is_graph_hom(self):
        triangle = complete_graph(3)

        assert is_graph_hom(path_graph(3), triangle, (0, 1, 0))
        assert not is_graph_hom(path_graph(3), triangle, (0, 0, 1))
        assert not is_graph_hom(path_graph(3), triangle, (0, 1))

    def test_colouring_constructor_validates(self):
        with pytest.raises(ArgumentError):
            GraphColouring(path_graph(2), complete_graph(3), (1, 1))

    def test_clique_colourings_are_frozen(self):
        # Act
        gcol = build_gcol_graph(complete_graph(4), complete_graph(4))

        # Assert
        assert len(gcol.colourings) == 24
        assert gcol.edges == ()

    def test_single_vertex_moves_on_a_path(self):
        # Arrange
        source, target = path_graph(2), complete_graph(3)

        # Act
        gcol = build_gcol_graph(source, target)

        # Assert
        assert len(gcol.colourings) == 6
        for i, j in gcol.edges:
            assert gcol_adjacent(gcol.colourings[i], gcol.colourings[j])
        assert len(gcol.components()) == 1


class TestKempe:
    def test_components_partition_the_vertices(self, edge_colouring):
        for bits in (1, 2, 3):
            parts = two_colour_components(edge_colouring, BitVec(2, bits))
            assert sorted(v for part in parts for v in part) == [0, 1]

    def test_moves_of_an_edge(self, edge_colouring):
        # Act
        images = [psi.image for psi in kempe_neighbors(edge_colouring)]

        # Assert
        assert images == [(0, 2), (0, 3), (1, 0), (2, 1), (3, 1)]

    def test_swap_witness(self, edge_colouring, k4_with_vectors):
        # Arrange
        swapped = GraphColouring(path_graph(2), k4_with_vectors, (1, 0))

        # Act
        witness = kempe_adjacent(edge_colouring, swapped)

        # Assert
        assert witness is not None
        assert witness.b == BitVec.from_str("10")
        assert witness.vertices == (0, 1)
        assert witness.b_prime == BitVec.zero(2)

    def test_every_move_is_adjacent(self, edge_colouring):
        for psi, witness in kempe_moves(edge_colouring):
            assert kempe_adjacent(edge_colouring, psi) == witness

    def test_decide_finds_a_shortest_path(self, edge_colouring, k4_with_vectors):
        # Arrange
        goal = GraphColouring(path_graph(2), k4_with_vectors, (3, 2))

        # Act
        path = kempe_decide(edge_colouring, goal)

        # Assert
        assert path is not None
        assert path.colourings[-1] == goal
        assert path.length >= 1

    def test_kempe_moves_need_vectors(self):
        colouring = GraphColouring(path_graph(2), complete_graph(3), (0, 1))

        with pytest.raises(ArgumentError):
            kempe_moves(colouring)

    def test_kempe_graph_of_an_edge_is_connected(self, k4_with_vectors):
        # Act
        kcol = build_kcol_graph(path_graph(2), k4_with_vectors)

        # Assert
        assert len(kcol.colourings) == 12
        assert len(kcol.components()) == 1
