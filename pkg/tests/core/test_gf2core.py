import numpy as np
import pytest

from matroid_recolouring.core.gf2core import (
    BitMatrix,
    BitVec,
    XorBasis,
    gray_code_span,
    in_span,
    mat_mul,
    mat_vec,
    null_space_basis,
    random_invertible,
    rank_of,
    row_reduce,
    row_space,
    vec_add,
)
from matroid_recolouring.errors import CapacityError, DimensionError


@pytest.fixture
def dependent_matrix() -> BitMatrix:
    # third column is the sum of the first two
    return BitMatrix.from_strings(["100", "010", "110"])


class TestBitVec:
    def test_from_str_puts_coordinate_zero_leftmost(self):
        # Arrange
        text = "01"

        # Act
        vector = BitVec.from_str(text)

        # Assert
        assert vector.bits == 2
        assert vector[1] == 1
        assert str(vector) == text

    def test_addition_is_xor(self):
        a, b = BitVec.from_str("110"), BitVec.from_str("011")

        assert a + b == vec_add(a, b) == BitVec.from_str("101")
        assert not (a + a)

    def test_addition_rejects_mismatched_lengths(self):
        with pytest.raises(DimensionError):
            _ = BitVec.from_str("10") + BitVec.from_str("100")

    def test_bits_must_fit_length(self):
        with pytest.raises(DimensionError):
            BitVec(3, 8)

    def test_from_str_rejects_other_characters(self):
        with pytest.raises(DimensionError):
            BitVec.from_str("012")

    def test_is_immutable(self):
        vector = BitVec.unit(3, 0)

        with pytest.raises(AttributeError):
            vector.bits = 2

    def test_order_is_by_length_then_value(self):
        # Arrange
        vectors = [BitVec(3, 1), BitVec(2, 3), BitVec(2, 0)]

        # Act
        ordered = sorted(vectors)

        # Assert
        assert ordered == [BitVec(2, 0), BitVec(2, 3), BitVec(3, 1)]

    def test_support_and_weight(self):
        vector = BitVec.from_indices(6, [1, 4])

        assert vector.support() == (1, 4)
        assert vector.weight == 2

    def test_numpy_interchange(self):
        # Arrange
        array = np.array([1, 0, 1, 1], dtype=np.uint8)

        # Act
        vector = BitVec.from_numpy(array)

        # Assert
        assert str(vector) == "1011"
        np.testing.assert_array_equal(vector.to_numpy(), array)

    def test_words_split_long_vectors(self):
        vector = BitVec.unit(70, 65)

        assert vector.words() == (0, 2)


class TestBitMatrix:
    def test_rank(self, dependent_matrix):
        assert dependent_matrix.rank == 2

    def test_row_reduce_reports_pivots(self, dependent_matrix):
        # Act
        reduction = row_reduce(dependent_matrix)

        # Assert
        assert reduction.rank == 2
        assert reduction.pivots == (0, 1)

    def test_null_space_is_annihilated(self, dependent_matrix):
        # Act
        basis = null_space_basis(dependent_matrix)

        # Assert
        assert len(basis) == 1
        assert all(not mat_vec(dependent_matrix, v) for v in basis)

    def test_row_space_has_two_to_the_rank_vectors(self, dependent_matrix):
        # Act
        vectors = list(row_space(dependent_matrix))

        # Assert
        assert len(set(vectors)) == 4
        assert not vectors[0]

    def test_row_space_respects_rank_cap(self, dependent_matrix):
        with pytest.raises(CapacityError):
            list(row_space(dependent_matrix, max_rank=1))

    def test_in_span(self, dependent_matrix):
        assert in_span(dependent_matrix, BitVec.from_str("110"))
        assert not in_span(dependent_matrix, BitVec.from_str("001"))

    def test_transpose_twice_is_identity(self, dependent_matrix):
        assert dependent_matrix.transpose().transpose() == dependent_matrix

    def test_identity_is_neutral_for_products(self, dependent_matrix):
        assert mat_mul(BitMatrix.identity(3), dependent_matrix) == dependent_matrix

    def test_from_rows_matches_columns(self):
        # Arrange
        rows = [BitVec.from_str("101"), BitVec.from_str("011")]

        # Act
        matrix = BitMatrix.from_rows(rows)

        # Assert
        assert [str(c) for c in matrix.columns] == ["10", "01", "11"]
        assert matrix.row_vectors() == rows

    def test_random_invertible_has_full_rank(self):
        matrix = random_invertible(5, np.random.default_rng(7))

        assert matrix.rank == 5


class TestSpans:
    def test_gray_code_visits_every_combination_once(self):
        # Act
        values = list(gray_code_span([1, 2, 4]))

        # Assert
        assert sorted(values) == list(range(8))

    def test_xor_basis_rejects_dependent_vectors(self):
        basis = XorBasis()

        assert basis.add(0b011)
        assert basis.add(0b110)
        assert not basis.add(0b101)
        assert len(basis) == 2

    def test_rank_of_mixed_inputs(self):
        assert rank_of([BitVec.from_str("10"), 2, BitVec.from_str("11")]) == 2
