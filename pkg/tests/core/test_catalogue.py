from matroid_recolouring.core.catalogue import (
    compact_clique_matroid,
    complete_bipartite_graph,
    cycle_graph,
    edge_matroid,
    graph_corpus,
    half_cube,
    loop_matroid,
    looped_clique_matroid,
    looped_projective_geometry,
    path_matroid,
    projective_geometry,
)


class TestMatroids:
    def test_projective_geometry(self):
        pg = projective_geometry(2)

        assert pg.size == 7
        assert pg.rank == 3
        assert not pg.loops

    def test_looped_projective_geometry_puts_zero_last(self):
        pg = looped_projective_geometry(1)

        assert pg.size == 4
        assert pg.loops == (3,)

    def test_compact_clique(self):
        compact = compact_clique_matroid(4)

        assert compact.size == 6
        assert compact.ambient_dim == 3
        assert compact.rank == 3

    def test_looped_clique_has_one_loop(self):
        looped = looped_clique_matroid(3)

        assert looped.size == 4
        assert looped.loops == (3,)

    def test_path_matroid_is_free(self):
        free = path_matroid(4)

        assert free.size == free.rank == 3

    def test_loop_and_edge(self):
        assert loop_matroid().rank == 0
        assert edge_matroid().rank == 1


class TestGraphs:
    def test_cycle_closing_edge_is_normalized(self):
        assert cycle_graph(5).edges[-1] == (0, 4)

    def test_complete_bipartite(self):
        graph = complete_bipartite_graph(2, 3)

        assert graph.n == 5
        assert len(graph.edges) == 6

    def test_half_cube_is_six_regular(self):
        # Act
        graph = half_cube(4)

        # Assert
        assert graph.n == 8
        assert graph.degree_sequence() == [6] * 8
        assert len(graph.edges) == 24

    def test_corpus_of_connected_small_graphs(self):
        # K_2, P_3, K_3, then the six connected graphs on four vertices
        assert len(graph_corpus(3)) == 3
        assert len(graph_corpus(4)) == 9
