from pathlib import Path

import pytest

from matroid_recolouring.core.catalogue import complete_graph, path_graph
from matroid_recolouring.core.decision import decision_graph
from matroid_recolouring.core.graphs import build_gcol_graph
from matroid_recolouring.core.recolor import build_col_graph
from matroid_recolouring.outputs.dot.exporter import DotExporter, render_dot


@pytest.fixture
def storer_mock(mocker):
    def mock_store(text: str, destination_path: Path):  # noqa: ARG001
        return destination_path

    storer_mock = mocker.Mock()
    storer_mock.store.side_effect = mock_store
    return storer_mock


def count_nodes(source: str) -> int:
    return sum(1 for line in source.splitlines() if "[label=" in line and " -- " not in line)


def count_edges(source: str) -> int:
    return sum(1 for line in source.splitlines() if " -- " in line)


class TestRenderDot:
    def test_decision_graph_of_the_triangle(self, k3):
        # Act
        dot = render_dot(decision_graph(k3), name="D")

        # Assert
        assert dot.source.startswith("graph D {")
        assert count_nodes(dot.source) == 4
        assert count_edges(dot.source) == 6

    def test_colouring_graph_carries_witnesses(self, k4, k3):
        # Act
        source = render_dot(build_col_graph(k4, k3)).source

        # Assert
        assert count_nodes(source) == 6
        assert count_edges(source) == 9

    def test_single_vertex_colouring_graph(self):
        # Act
        source = render_dot(build_gcol_graph(complete_graph(4), complete_graph(4))).source

        # Assert
        assert count_nodes(source) == 24
        assert count_edges(source) == 0

    def test_gcol_of_an_edge(self):
        source = render_dot(build_gcol_graph(path_graph(2), complete_graph(3))).source

        assert count_edges(source) == 6

    def test_unsupported_object(self):
        with pytest.raises(NotImplementedError):
            render_dot(complete_graph(3))


class TestDotExporter:
    def test_export_stores_the_source(self, mocker, storer_mock, k3):
        # Arrange
        exporter = DotExporter(storer=storer_mock)
        destination = Path("out") / "d_k3.dot"

        # Act
        path = exporter.export(decision_graph(k3), destination_path=destination)

        # Assert
        assert path == destination
        storer_mock.store.assert_called_once_with(text=mocker.ANY, destination_path=destination)
        text = storer_mock.store.call_args.kwargs["text"]
        assert text.startswith("graph d_k3 {")
