import pytest

from matroid_recolouring.core.catalogue import (
    clique_matroid,
    complete_graph,
    edge_matroid,
    loop_matroid,
    looped_clique_matroid,
    projective_geometry,
)
from matroid_recolouring.core.graphs import GraphColouring
from matroid_recolouring.core.hom import (
    MatroidHom,
    automorphisms,
    cocircuit_shifts,
    compose,
    dismantles_to,
    dismantling_retractions,
    enumerate_homs,
    identity,
    induced_graph_hom,
    is_homomorphism,
    is_retraction,
    linear_extension,
    projective_quotient,
    retract_image,
    triviality_certificate,
)
from matroid_recolouring.core.matroid import isomorphism
from matroid_recolouring.errors import ArgumentError, CapacityError, DomainMismatchError

# folds the star of vertex 3 of K_4 onto the opposite triangle
K4_FOLDING = (0, 1, 3, 3, 1, 0)


class TestIsHomomorphism:
    def test_identity(self, k3):
        assert is_homomorphism(k3, k3, (0, 1, 2))

    def test_constant_map_breaks_the_triangle(self, k3):
        assert not is_homomorphism(k3, k3, (0, 0, 0))

    def test_exhaustive_check_agrees(self, k4, k3):
        for tau in enumerate_homs(k4, k3):
            assert is_homomorphism(k4, k3, tau.image, exhaustive=True)

    def test_bad_length_raises(self, k3):
        with pytest.raises(ArgumentError):
            is_homomorphism(k3, k3, (0, 1))

    def test_out_of_range_index_raises(self, k3):
        with pytest.raises(ArgumentError):
            is_homomorphism(k3, k3, (0, 1, 3))

    def test_constructor_validates(self, k3):
        with pytest.raises(ArgumentError):
            MatroidHom(k3, k3, (1, 1, 1))


class TestEnumeration:
    def test_clique_into_triangle(self, k4, k3):
        # Act
        homs = enumerate_homs(k4, k3)

        # Assert
        assert len(homs) == 6
        assert [h.image for h in homs] == sorted(h.image for h in homs)

    def test_cycle_into_triangle(self, c5, k3):
        assert len(enumerate_homs(c5, k3)) == 60

    def test_loops_need_a_loop_in_the_codomain(self, k3):
        assert enumerate_homs(loop_matroid(), k3) == []
        assert len(enumerate_homs(loop_matroid(), looped_clique_matroid(3))) == 1

    def test_cap(self, c5, k3):
        with pytest.raises(CapacityError):
            enumerate_homs(c5, k3, max_homs=10)

    def test_linear_extension(self, k3):
        assert linear_extension(k3, k3, [0, 1]) == identity(k3)
        assert linear_extension(k3, k3, [0, 0]) is None


class TestComposition:
    def test_compose_with_identity(self, k4, k3):
        tau = enumerate_homs(k4, k3)[0]

        assert compose(identity(k3), tau) == tau
        assert compose(tau, identity(k4)) == tau

    def test_compose_checks_domains(self, k4, k3):
        tau = enumerate_homs(k4, k3)[0]

        with pytest.raises(DomainMismatchError):
            compose(tau, tau)

    def test_induced_graph_hom_of_identity(self, k3):
        # Arrange
        graph = complete_graph(3)
        colouring = GraphColouring(graph, graph, (0, 1, 2))

        # Act
        tau = induced_graph_hom(colouring)

        # Assert
        assert tau == identity(k3)

    def test_automorphisms_of_k4_start_with_the_identity(self, k4):
        # Act
        found = automorphisms(k4)

        # Assert
        assert len(found) == 24
        assert found[0] == identity(k4)
        assert all(len(set(alpha.image)) == k4.size for alpha in found)

    def test_folding_is_not_an_automorphism(self, k4):
        assert MatroidHom(k4, k4, K4_FOLDING) not in automorphisms(k4)


class TestShifts:
    def test_shifts_of_identity_on_triangle_are_transpositions(self, k3):
        # Act
        images = {image for _, _, image in cocircuit_shifts(identity(k3))}

        # Assert
        assert images == {(1, 0, 2), (2, 1, 0), (0, 2, 1)}

    def test_shift_constants_are_nonzero(self, k4, k3):
        tau = enumerate_homs(k4, k3)[0]

        assert all(constant for _, constant, _ in cocircuit_shifts(tau))


class TestRetractions:
    def test_folding_retraction_of_k4(self, k4):
        # Act
        found = {r.image for r in dismantling_retractions(k4)}

        # Assert
        assert K4_FOLDING in found

    def test_folding_image_is_a_triangle(self, k4):
        # Arrange
        r = MatroidHom(k4, k4, K4_FOLDING)

        # Act
        image = retract_image(r)

        # Assert
        assert is_retraction(r)
        assert isomorphism(image, clique_matroid(3)) is not None

    def test_is_retraction_needs_an_endomorphism(self, k4, k3):
        with pytest.raises(ArgumentError):
            is_retraction(enumerate_homs(k4, k3)[0])

    def test_triangle_has_no_dismantling_retraction(self, k3):
        assert dismantling_retractions(k3) == []

    def test_k4_dismantles_to_triangle_in_one_step(self, k4, k3):
        sequence = dismantles_to(k4, k3)

        assert sequence is not None
        assert len(sequence) == 1

    def test_looped_clique_dismantles_to_the_loop(self):
        assert dismantles_to(looped_clique_matroid(2), loop_matroid()) is not None

    def test_triangle_does_not_dismantle_to_an_edge(self, k3):
        assert dismantles_to(k3, edge_matroid()) is None

    def test_certificate_of_the_edge_is_empty(self):
        # Act
        certificate = triviality_certificate(edge_matroid())

        # Assert
        assert certificate is not None
        assert certificate.target == "edge"
        assert certificate.retractions == ()

    def test_triangle_has_no_certificate(self, k3):
        assert triviality_certificate(k3) is None


class TestProjectiveQuotient:
    def test_quotient_is_onto(self):
        # Act
        quotient = projective_quotient(2)

        # Assert
        assert quotient.domain.size == 6
        assert quotient.codomain == projective_geometry(1)
        assert set(quotient.image) == {0, 1, 2}
