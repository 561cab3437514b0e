from matroid_recolouring.constants import FORMAT_HEADER
from matroid_recolouring.core.catalogue import clique_matroid, complete_graph, cycle_matroid
from matroid_recolouring.core.decision import decision_graph
from matroid_recolouring.core.graphs import SimpleGraph, build_kcol_graph
from matroid_recolouring.core.hom import enumerate_homs
from matroid_recolouring.core.recolor import build_col_graph, recol_decide
from matroid_recolouring.core.reduction import build_gadget
from matroid_recolouring.inputs.text.reader import TextReader
from matroid_recolouring.models.reports import ReductionReport
from matroid_recolouring.outputs.text.writer import (
    format_colouring_components,
    format_components,
    format_decision_summary,
    format_gadget_map,
    format_graph,
    format_hom,
    format_homs,
    format_matroid,
    format_path,
    format_reduction_report,
)


class TestTextWriter:
    def test_documents_start_with_the_format_header(self, k3):
        assert format_matroid(k3).splitlines()[0] == FORMAT_HEADER

    def test_matroid_parses_back(self, k4):
        assert TextReader.parse_matroid(format_matroid(k4)) == k4

    def test_graph_with_isolated_vertex_parses_back(self):
        # Arrange
        graph = SimpleGraph(4, [(0, 1), (1, 2)])

        # Act
        back = TextReader.parse_graph(format_graph(graph))

        # Assert
        assert back == graph

    def test_hom_parses_back(self, k4, k3):
        # Arrange
        tau = enumerate_homs(k4, k3)[3]

        # Act
        back = TextReader().parse_hom(format_hom(tau), domain=k4, codomain=k3)

        # Assert
        assert back == tau

    def test_path_lists_every_hom(self, c5, k3):
        # Arrange
        homs = enumerate_homs(c5, k3)
        path = recol_decide(homs[0], homs[-1])

        # Act
        images = TextReader.parse_images(format_path(path))

        # Assert
        assert images == [tau.image for tau in path.homs]
        assert f"# length: {path.length}" in format_path(path)

    def test_homs_one_per_line(self, k4, k3):
        homs = enumerate_homs(k4, k3)

        assert TextReader.parse_images(format_homs(homs)) == [tau.image for tau in homs]

    def test_components_summary(self, k4, k3):
        # Act
        text = format_components(build_col_graph(k4, k3))

        # Assert
        assert "# components: 1" in text
        assert "# component 0: 6 homs" in text

    def test_decision_summary(self, k3):
        # Act
        lines = format_decision_summary(decision_graph(k3)).splitlines()

        # Assert
        assert lines[1:] == [
            "universal: yes",
            "vertices: 4",
            "edges: 6",
            "degree sequence: 3 3 3 3",
            "complete: yes",
        ]

    def test_gadget_map(self, k3):
        # Act
        text = format_gadget_map(build_gadget(k3, clique_matroid(5)))

        # Assert
        assert "0 13" in text.splitlines()
        assert text.splitlines()[-1] == "block 3 13"

    def test_reduction_report(self):
        # Arrange
        report = ReductionReport(
            source_points=5,
            gadget_points=20,
            clique_size=5,
            source_homs=0,
            crossing_cases={"star": 2, "empty": 1},
        )

        # Act
        text = format_reduction_report(report)

        # Assert
        assert "crossing cases: empty=1, star=2" in text
        assert text.rstrip().endswith("result: OK")

    def test_cycle_matroid_round_trip_keeps_order(self):
        c6 = cycle_matroid(6)

        assert TextReader.parse_matroid(format_matroid(c6)).points == c6.points

    def test_reduction_report_with_an_unexpected_crossing(self):
        # Arrange
        report = ReductionReport(
            source_points=3,
            gadget_points=16,
            clique_size=5,
            source_homs=24,
            gadget_edges=40,
            automorphisms=120,
            crossing_cases={"unexpected": 1},
        )

        # Act
        text = format_reduction_report(report)

        # Assert
        assert "gadget edges: 40 (120 automorphisms of N)" in text
        assert text.rstrip().endswith("result: MISMATCH")

    def test_colouring_components(self, k3):
        # Arrange
        kcol = build_kcol_graph(complete_graph(2), decision_graph(k3).graph)

        # Act
        text = format_colouring_components(kcol)

        # Assert
        assert "# components: 1" in text
        assert len(TextReader.parse_images(text)) == 12
