import pytest

from matroid_recolouring.core.catalogue import (
    clique_matroid,
    compact_clique_matroid,
    cycle_matroid,
    path_matroid,
)
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.matroid import (
    PointSet,
    circuits,
    cocircuits,
    decompose_cocycle,
    find_clique_copy,
    from_columns,
    fundamental_circuit,
    fundamental_circuits,
    fundamental_cocircuit,
    is_circuit,
    is_cocircuit,
    is_cocycle,
    isomorphism,
    largest_clique_copy,
    restriction,
)
from matroid_recolouring.errors import (
    ArgumentError,
    CapacityError,
    DimensionError,
    LoopError,
    SimplicityError,
)


def columns(*values: str) -> list[BitVec]:
    return [BitVec.from_str(v) for v in values]


class TestPointSet:
    def test_set_operations(self):
        a = PointSet.from_indices(5, [0, 1, 2])
        b = PointSet.from_indices(5, [2, 3])

        assert (a | b).indices() == (0, 1, 2, 3)
        assert (a & b).indices() == (2,)
        assert (a ^ b).indices() == (0, 1, 3)
        assert (a - b).indices() == (0, 1)
        assert a.complement().indices() == (3, 4)

    def test_mismatched_ground_sets_raise(self):
        with pytest.raises(DimensionError):
            _ = PointSet(3, 1) | PointSet(4, 1)

    def test_index_outside_ground_set(self):
        with pytest.raises(ArgumentError):
            PointSet.from_indices(3, [3])

    def test_order_is_by_size_then_members(self):
        sets = [PointSet.from_indices(4, [0, 1]), PointSet.from_indices(4, [3])]

        assert sorted(sets)[0] == PointSet.from_indices(4, [3])


class TestConstruction:
    def test_from_columns(self):
        # Act
        matroid = from_columns(columns("110", "101", "011"))

        # Assert
        assert matroid.size == 3
        assert matroid.rank == 2
        assert matroid.basis == (0, 1)

    def test_repeated_column_raises(self):
        with pytest.raises(SimplicityError):
            from_columns(columns("10", "01", "10"))

    def test_zero_column_needs_loops(self):
        with pytest.raises(LoopError):
            from_columns(columns("10", "00"))

        looped = from_columns(columns("10", "00"), allow_loops=True)
        assert looped.loops == (1,)

    def test_no_columns_raise(self):
        with pytest.raises(DimensionError):
            from_columns([])

    def test_graphic_points_are_edge_indicators(self, k3):
        assert [str(p) for p in k3.points] == ["110", "101", "011"]

    def test_restriction_keeps_order(self, k4):
        # Act
        sub = restriction(k4, [3, 0])

        # Assert
        assert sub.points == (k4.points[3], k4.points[0])
        assert sub.ambient_dim == k4.ambient_dim

    def test_coordinates_round_trip(self, k4):
        for e, point in enumerate(k4.points):
            assert k4.from_coordinates(k4.coordinates[e]) == point
            assert k4.coordinates_of(point) == k4.coordinates[e]


class TestCircuits:
    def test_fundamental_circuit_of_non_basis_point(self, k3):
        assert fundamental_circuit(k3, 2).indices() == (0, 1, 2)

    def test_fundamental_circuit_of_basis_point_raises(self, k3):
        with pytest.raises(ArgumentError):
            fundamental_circuit(k3, 0)

    def test_fundamental_circuits_span_nullity(self, k4):
        assert len(fundamental_circuits(k4)) == k4.size - k4.rank

    def test_circuits_of_k4(self, k4):
        # triangles and four-cycles
        found = circuits(k4)

        assert len(found) == 7
        assert sorted(len(z) for z in found) == [3, 3, 3, 3, 4, 4, 4]
        assert all(is_circuit(k4, z) for z in found)

    def test_cocircuits_of_k4(self, k4):
        # vertex stars and the three balanced cuts
        found = cocircuits(k4)

        assert len(found) == 7
        assert all(is_cocircuit(k4, c) for c in found)

    def test_vertex_star_is_a_cocircuit(self, k4):
        star = PointSet.from_indices(k4.size, [0, 1, 2])

        assert is_cocircuit(k4, star)
        assert not is_cocircuit(k4, PointSet.from_indices(k4.size, [0, 1]))

    def test_fundamental_cocircuit_contains_its_basis_point(self, k4):
        for k, b in enumerate(k4.basis):
            cocircuit = fundamental_cocircuit(k4, k)
            assert b in cocircuit
            assert is_cocircuit(k4, cocircuit)

    def test_cycle_space_cap(self, k4):
        with pytest.raises(CapacityError):
            circuits(clique_matroid(5), max_rank=2)
        with pytest.raises(CapacityError):
            cocircuits(k4, max_rank=2)

    def test_decompose_cocycle_into_disjoint_cocircuits(self):
        # Arrange
        c4 = cycle_matroid(4)
        whole = c4.ground_set

        # Act
        parts = decompose_cocycle(c4, whole)

        # Assert
        assert len(parts) == 2
        assert not (parts[0] & parts[1])
        assert (parts[0] | parts[1]) == whole
        assert all(is_cocircuit(c4, p) for p in parts)

    def test_decompose_rejects_non_cocycle(self, k3):
        single = PointSet.from_indices(k3.size, [0])

        assert not is_cocycle(k3, single)
        with pytest.raises(ArgumentError):
            decompose_cocycle(k3, single)


class TestIsomorphism:
    def test_graphic_and_compact_cliques(self):
        # Act
        bijection = isomorphism(clique_matroid(4), compact_clique_matroid(4))

        # Assert
        assert bijection is not None
        assert sorted(bijection) == list(range(6))

    def test_different_ranks(self):
        assert isomorphism(cycle_matroid(4), path_matroid(5)) is None

    def test_cycle_is_not_a_clique(self):
        assert isomorphism(cycle_matroid(6), clique_matroid(4)) is None


class TestCliqueCopies:
    def test_clique_copy_in_larger_clique(self):
        # Act
        copy = find_clique_copy(clique_matroid(5), 5)

        # Assert
        assert copy is not None
        assert copy.n == 5
        assert len(set(copy.edge_points.values())) == 10

    def test_triangle_free_cycle_has_no_triangle(self):
        assert find_clique_copy(cycle_matroid(5), 3) is None

    def test_largest_copy(self, k4):
        assert largest_clique_copy(k4).n == 4
