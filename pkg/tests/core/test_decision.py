import networkx as nx
import numpy as np
import pytest

from matroid_recolouring.core.catalogue import (
    complete_graph,
    cycle_graph,
    half_cube,
    path_graph,
    projective_geometry,
)
from matroid_recolouring.core.decision import (
    TutteContext,
    apply_automorphism,
    cut,
    decision_graph,
    mk_equivalence_mismatches,
    mk_transfer_to_kempe,
    mk_transfer_to_matroid,
    phi_fiber_bijection_check,
    tutte_phi,
    tutte_tau,
)
from matroid_recolouring.core.gf2core import BitVec, mat_mul, random_invertible
from matroid_recolouring.core.graphs import (
    GraphColouring,
    SimpleGraph,
    kempe_adjacent,
    kempe_decide,
)
from matroid_recolouring.core.hom import MatroidHom
from matroid_recolouring.core.matroid import from_columns, graphic
from matroid_recolouring.core.recolor import build_col_graph, validate_path
from matroid_recolouring.errors import (
    ArgumentError,
    CapacityError,
    PreconditionError,
)


@pytest.fixture
def house() -> SimpleGraph:
    # a 5-cycle with the chord 2-4
    return SimpleGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (2, 4)])


@pytest.fixture
def triangle_points():
    return from_columns([BitVec.from_str(s) for s in ("01", "10", "11")])


@pytest.fixture
def house_tau(house, triangle_points) -> MatroidHom:
    return MatroidHom(graphic(house), triangle_points, (0, 0, 0, 1, 2, 2))


class TestDecisionGraph:
    def test_universal_graph_of_triangle_is_k4(self, k3):
        # Act
        decision = decision_graph(k3)

        # Assert
        assert decision.graph.n == 4
        assert nx.is_isomorphic(decision.graph.to_networkx(), complete_graph(4).to_networkx())
        assert decision.is_complete()

    def test_universal_graph_of_k4_is_the_half_cube(self, k4):
        # Act
        decision = decision_graph(k4)

        # Assert
        assert nx.is_isomorphic(decision.graph.to_networkx(), half_cube(4).to_networkx())
        assert not decision.is_complete()

    def test_representation_graph_lives_in_the_ambient_space(self, k3):
        # Act
        decision = decision_graph(k3, universal=False)

        # Assert
        assert decision.graph.n == 8
        assert len(decision.graph.edges) == 12

    def test_vertex_count_cap(self, k4):
        with pytest.raises(CapacityError):
            decision_graph(k4, max_rank=2)

    def test_coordinates_round_trip(self, k4):
        decision = decision_graph(k4)

        for point in k4.points:
            assert decision.to_ambient(decision.from_ambient(point)) == point

    def test_outside_the_point_space(self, k3):
        decision = decision_graph(k3)

        with pytest.raises(ArgumentError):
            decision.from_ambient(BitVec.from_str("111"))


class TestTutteConnection:
    def test_disconnected_graph_has_no_context(self):
        with pytest.raises(PreconditionError):
            TutteContext(SimpleGraph(3, [(0, 1)]))

    def test_phi_of_the_house(self, house, house_tau, triangle_points):
        # Arrange
        decision = decision_graph(triangle_points, universal=False)
        ctx = TutteContext(house)

        # Act
        phi = tutte_phi(house_tau, ctx, BitVec.from_str("01"), decision)

        # Assert
        assert phi.image == (2, 0, 2, 0, 1)
        assert tutte_tau(phi, decision) == house_tau

    def test_another_root_colour_gives_the_same_tau(self, house, house_tau, triangle_points):
        # Arrange
        decision = decision_graph(triangle_points, universal=False)
        phi = GraphColouring(house, decision.graph, (1, 3, 1, 3, 2))

        # Act
        tau = tutte_tau(phi, decision)

        # Assert
        assert tau == house_tau
        assert tutte_phi(tau, TutteContext(house), BitVec.from_str("10"), decision) == phi

    def test_root_colour_must_be_a_vertex(self, house, house_tau, triangle_points):
        decision = decision_graph(triangle_points, universal=False)

        with pytest.raises(ArgumentError):
            tutte_phi(house_tau, TutteContext(house), BitVec.from_str("011"), decision)

    def test_root_fibers_are_in_bijection_with_homs(self, k3):
        assert phi_fiber_bijection_check(cycle_graph(4), k3)

    def test_cut_of_a_vertex_is_its_star(self):
        assert cut(cycle_graph(4), [0]).indices() == (0, 3)


class TestKempeEquivalence:
    def test_no_mismatches_into_the_projective_line(self):
        assert mk_equivalence_mismatches(cycle_graph(4), projective_geometry(1)) == 0

    def test_edge_of_col_becomes_kempe_moves(self):
        # Arrange
        graph = cycle_graph(4)
        target = projective_geometry(1)
        decision = decision_graph(target)
        ctx = TutteContext(graph)
        col = build_col_graph(graphic(graph), target)
        i, j = col.edges[0]

        # Act
        path = mk_transfer_to_kempe(col.homs[i], col.homs[j], ctx, decision)

        # Assert
        zero = BitVec.zero(decision.dim)
        assert path.colourings[0] == tutte_phi(col.homs[i], ctx, zero, decision)
        assert path.colourings[-1] == tutte_phi(col.homs[j], ctx, zero, decision)
        for before, after in zip(path.colourings, path.colourings[1:]):
            assert kempe_adjacent(before, after) is not None

    def test_transfer_to_kempe_needs_a_projective_geometry(self, house, house_tau, k4):
        decision = decision_graph(k4)

        with pytest.raises(PreconditionError):
            mk_transfer_to_kempe(house_tau, house_tau, TutteContext(house), decision)

    def test_kempe_path_becomes_a_recolouring_path(self):
        # Arrange
        graph = cycle_graph(4)
        decision = decision_graph(projective_geometry(1))
        start = GraphColouring(graph, decision.graph, (0, 1, 0, 1))
        goal = GraphColouring(graph, decision.graph, (0, 1, 2, 3))
        kempe = kempe_decide(start, goal)
        assert kempe is not None

        # Act
        path = mk_transfer_to_matroid(kempe, decision)

        # Assert
        assert path.start == tutte_tau(start, decision)
        assert path.end == tutte_tau(goal, decision)
        assert validate_path(path)


class TestAutomorphisms:
    def test_swapping_two_colours(self):
        # Arrange
        target = complete_graph(4)
        phi = GraphColouring(path_graph(2), target, (0, 1))

        # Act
        psi = apply_automorphism(phi, (1, 0, 2, 3))

        # Assert
        assert psi.image == (1, 0)

    def test_non_automorphism_raises(self):
        target = path_graph(3)
        phi = GraphColouring(path_graph(2), target, (0, 1))

        with pytest.raises(ArgumentError):
            apply_automorphism(phi, (1, 0, 2))


class TestDecisionInvariants:
    def test_row_operations_give_an_isomorphic_graph(self, k4):
        # Arrange
        change = random_invertible(k4.ambient_dim, np.random.default_rng(11))
        moved = from_columns(mat_mul(change, k4.representation).columns)

        # Act
        before = decision_graph(k4, universal=False).graph.to_networkx()
        after = decision_graph(moved, universal=False).graph.to_networkx()

        # Assert
        assert nx.is_isomorphic(before, after)

    def test_changing_the_root_shifts_phi_by_a_constant(self, house, house_tau, triangle_points):
        # Arrange
        decision = decision_graph(triangle_points, universal=False)
        zero = BitVec.zero(decision.dim)

        # Act
        first = tutte_phi(house_tau, TutteContext(house, 0), zero, decision)
        second = tutte_phi(house_tau, TutteContext(house, 3), zero, decision)

        # Assert
        shifts = {first.colour(v) + second.colour(v) for v in range(house.n)}
        assert len(shifts) == 1
