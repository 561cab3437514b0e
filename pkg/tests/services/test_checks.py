import pytest

from matroid_recolouring.config import Caps
from matroid_recolouring.core.catalogue import complete_graph, cycle_graph, path_graph
from matroid_recolouring.core.graphs import SimpleGraph
from matroid_recolouring.core.matroid import circuits, cocircuits, graphic
from matroid_recolouring.services.checks import (
    CHECKS,
    check_clique_into_triangle,
    check_clique_vertex_recolouring,
    check_cycle_into_triangle,
    check_decision_graphs,
    check_dismantling,
    check_looped_projective,
    check_tutte_round_trip,
    cycle_edge_sets,
    minimal_edge_cuts,
    tutte_example,
)


@pytest.fixture
def caps() -> Caps:
    return Caps()


class TestChecks:
    @pytest.mark.parametrize(
        "check",
        [
            check_cycle_into_triangle,
            check_clique_into_triangle,
            check_clique_vertex_recolouring,
            check_decision_graphs,
            check_dismantling,
            check_tutte_round_trip,
        ],
    )
    def test_worked_examples_pass(self, caps, check):
        # Act
        passed, detail = check(caps, "synchronous")

        # Assert
        assert passed, detail

    def test_suite_names_are_unique(self):
        names = [name for name, _ in CHECKS]

        assert len(names) == len(set(names)) == 12

    def test_tutte_example_hom(self):
        graph, matroid, tau = tutte_example()

        assert graph.n == 5
        assert tau.codomain == matroid
        assert tau.image == (0, 0, 0, 1, 2, 2)


class TestGraphOracles:
    @pytest.mark.parametrize(
        "graph",
        [
            cycle_graph(4),
            complete_graph(4),
            path_graph(4),
            SimpleGraph(5, [(0, 1), (1, 2), (0, 2), (3, 4)]),
        ],
    )
    def test_cocircuits_are_minimal_edge_cuts(self, graph):
        assert set(cocircuits(graphic(graph))) == minimal_edge_cuts(graph)

    @pytest.mark.parametrize("graph", [cycle_graph(4), complete_graph(4)])
    def test_circuits_are_cycles(self, graph):
        assert set(circuits(graphic(graph))) == cycle_edge_sets(graph)

    def test_bonds_of_a_triangle_with_a_pendant_edge(self):
        # Arrange
        graph = SimpleGraph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])

        # Act
        bonds = minimal_edge_cuts(graph)

        # Assert
        assert sorted(sorted(b.indices()) for b in bonds) == [[0, 1], [0, 2], [1, 2], [3]]


class TestLoopedProjective:
    @pytest.fixture
    def small_corpus(self, mocker):
        return mocker.patch(
            "matroid_recolouring.services.checks.graph_corpus",
            return_value=[complete_graph(3), path_graph(3)],
        )

    def test_built_and_searched_paths_pass(self, caps, small_corpus):
        # Act
        passed, detail = check_looped_projective(caps, "synchronous")

        # Assert
        assert passed, detail
        small_corpus.assert_called_once_with(5)

    def test_missing_searched_path_is_a_violation(self, mocker, caps, small_corpus):
        # Arrange
        mocker.patch("matroid_recolouring.services.checks.recol_decide", return_value=None)

        # Act
        passed, detail = check_looped_projective(caps, "synchronous")

        # Assert
        assert not passed
        assert detail == "4 colouring graphs, 4 violations"
