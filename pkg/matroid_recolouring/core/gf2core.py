"""Exact linear algebra over GF(2).

Vectors pack their coordinates into a single Python integer: coordinate ``i`` is bit ``i``.
Text renderings put coordinate 0 leftmost, so ``BitVec.from_str("01")`` is the unit vector
of coordinate 1.
"""
from collections.abc import Iterable, Iterator, Sequence
from functools import total_ordering
from typing import NamedTuple

import numpy as np

from matroid_recolouring.constants import DEFAULT_MAX_RANK, MAX_VECTOR_LENGTH
from matroid_recolouring.errors import CapacityError, DimensionError


@total_ordering
class BitVec:
    """An immutable vector of GF(2)^length."""

    __slots__ = ("length", "bits")

    def __init__(self, length: int, bits: int = 0) -> None:
        if not 0 <= length <= MAX_VECTOR_LENGTH:
            raise DimensionError(f"{length=} outside [0, {MAX_VECTOR_LENGTH}]")
        if bits < 0 or bits >> length:
            raise DimensionError(f"{bits=} does not fit in {length} coordinates")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError(f"BitVec is immutable, cannot set {name}")

    @classmethod
    def zero(cls, length: int) -> "BitVec":  # noqa: ANN102
        """The zero vector."""
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVec":  # noqa: ANN102
        """The standard basis vector with a single one at ``index``."""
        if not 0 <= index < length:
            raise DimensionError(f"{index=} outside a vector of {length=}")
        return cls(length, 1 << index)

    @classmethod
    def from_str(cls, value: str) -> "BitVec":  # noqa: ANN102
        """Parse a bitstring, leftmost character is coordinate 0."""
        if any(ch not in "01" for ch in value):
            raise DimensionError(f"not a bitstring: {value!r}")
        bits = sum(1 << i for i, ch in enumerate(value) if ch == "1")
        return cls(len(value), bits)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVec":  # noqa: ANN102
        """Vector whose support is ``indices``."""
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise DimensionError(f"index {i} outside a vector of {length=}")
            bits ^= 1 << i
        return cls(length, bits)

    @classmethod
    def from_numpy(cls, array: np.ndarray) -> "BitVec":  # noqa: ANN102
        """Build from a one-dimensional 0/1 array."""
        flat = np.asarray(array, dtype=np.uint8).ravel() % 2
        return cls.from_indices(flat.size, np.flatnonzero(flat).tolist())

    def to_numpy(self) -> np.ndarray:
        """Coordinates as a uint8 array."""
        return np.array([(self.bits >> i) & 1 for i in range(self.length)], dtype=np.uint8)

    @property
    def weight(self) -> int:
        """Number of nonzero coordinates."""
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        """Indices of the nonzero coordinates, increasing."""
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def words(self) -> tuple[int, ...]:
        """The coordinates packed as 64-bit words, least significant word first."""
        count = max(1, -(-self.length // 64))
        return tuple((self.bits >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(count))

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise DimensionError(f"{index=} outside a vector of length {self.length}")
        return (self.bits >> index) & 1

    def __add__(self, other: "BitVec") -> "BitVec":
        return vec_add(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVec):
            return NotImplemented
        return self.length == other.length and self.bits == other.bits

    def __lt__(self, other: "BitVec") -> bool:
        return (self.length, self.bits) < (other.length, other.bits)

    def __hash__(self) -> int:
        return hash((self.length, self.bits))

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    def __repr__(self) -> str:
        return f"BitVec('{self}')"


class BitMatrix:
    """An immutable GF(2) matrix stored as an ordered sequence of columns."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, columns: Sequence[BitVec], rows: int | None = None) -> None:
        columns = tuple(columns)
        if rows is None:
            if not columns:
                raise DimensionError("row count required for a matrix without columns")
            rows = columns[0].length
        if any(c.length != rows for c in columns):
            raise DimensionError(f"all columns must have length {rows=}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", len(columns))
        object.__setattr__(self, "columns", columns)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError(f"BitMatrix is immutable, cannot set {name}")

    @classmethod
    def from_rows(
        cls,  # noqa: ANN102
        rows: Sequence[BitVec],
        cols: int | None = None,
    ) -> "BitMatrix":
        """Build a matrix from its row vectors."""
        if cols is None:
            if not rows:
                raise DimensionError("column count required for a matrix without rows")
            cols = rows[0].length
        if any(r.length != cols for r in rows):
            raise DimensionError(f"all rows must have length {cols=}")
        columns = [
            BitVec(len(rows), sum(((r.bits >> j) & 1) << i for i, r in enumerate(rows)))
            for j in range(cols)
        ]
        return cls(columns, rows=len(rows))

    @classmethod
    def from_strings(cls, columns: Sequence[str]) -> "BitMatrix":  # noqa: ANN102
        """Build a matrix from column bitstrings."""
        return cls([BitVec.from_str(c) for c in columns])

    @classmethod
    def from_numpy(cls, array: np.ndarray) -> "BitMatrix":  # noqa: ANN102
        """Build from a two-dimensional 0/1 array of shape (rows, cols)."""
        array = np.asarray(array, dtype=np.uint8) % 2
        if array.ndim != 2:
            raise DimensionError(f"expected a 2d array, got {array.ndim=}")
        columns = [BitVec.from_numpy(array[:, j]) for j in range(array.shape[1])]
        return cls(columns, rows=array.shape[0])

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":  # noqa: ANN102
        """The identity matrix."""
        return cls([BitVec.unit(size, i) for i in range(size)], rows=size)

    def to_numpy(self) -> np.ndarray:
        """Entries as a (rows, cols) uint8 array."""
        array = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for j, column in enumerate(self.columns):
            array[:, j] = column.to_numpy()
        return array

    def row_vectors(self) -> list[BitVec]:
        """Rows as vectors of length ``cols``."""
        return [
            BitVec(self.cols, sum(((c.bits >> i) & 1) << j for j, c in enumerate(self.columns)))
            for i in range(self.rows)
        ]

    def transpose(self) -> "BitMatrix":
        """The transposed matrix."""
        return BitMatrix(self.row_vectors(), rows=self.cols)

    @property
    def rank(self) -> int:
        """Rank over GF(2)."""
        return row_reduce(self).rank

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.rows == other.rows and self.columns == other.columns

    def __hash__(self) -> int:
        return hash((self.rows, self.columns))

    def __repr__(self) -> str:
        return f"BitMatrix({[str(c) for c in self.columns]}, rows={self.rows})"


class RowReduction(NamedTuple):
    rref: BitMatrix
    rank: int
    pivots: tuple[int, ...]


def vec_add(a: BitVec, b: BitVec) -> BitVec:
    """Coordinatewise XOR."""
    if a.length != b.length:
        raise DimensionError(f"cannot add vectors of lengths {a.length} and {b.length}")
    return BitVec(a.length, a.bits ^ b.bits)


def _eliminate(rows: list[int], width: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of integer-packed rows; returns (rows, pivots)."""
    rows = list(rows)
    pivots: list[int] = []
    top = 0
    for col in range(width):
        mask = 1 << col
        pivot = next((r for r in range(top, len(rows)) if rows[r] & mask), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        for r in range(len(rows)):
            if r != top and rows[r] & mask:
                rows[r] ^= rows[top]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def row_reduce(matrix: BitMatrix) -> RowReduction:
    """Reduced row echelon form, rank and pivot columns."""
    rows, pivots = _eliminate([r.bits for r in matrix.row_vectors()], matrix.cols)
    rref = BitMatrix.from_rows([BitVec(matrix.cols, r) for r in rows], cols=matrix.cols)
    return RowReduction(rref=rref, rank=len(pivots), pivots=tuple(pivots))


def gray_code_span(generators: Sequence[int]) -> Iterator[int]:
    """Every GF(2) combination of independent ``generators`` exactly once, starting at 0."""
    current = 0
    yield current
    for i in range(1, 1 << len(generators)):
        # flip the generator at the lowest set bit of i
        current ^= generators[(i & -i).bit_length() - 1]
        yield current


def row_space(matrix: BitMatrix, *, max_rank: int = DEFAULT_MAX_RANK) -> Iterator[BitVec]:
    """All vectors of the row space, in Gray-code order over the reduced rows."""
    reduction = row_reduce(matrix)
    if reduction.rank > max_rank:
        raise CapacityError(f"row space of rank {reduction.rank} exceeds {max_rank=}")
    generators = [r.bits for r in reduction.rref.row_vectors()[: reduction.rank]]
    for bits in gray_code_span(generators):
        yield BitVec(matrix.cols, bits)


def null_space_basis(matrix: BitMatrix) -> list[BitVec]:
    """A basis of {x : Ax = 0}, one vector per free column."""
    reduction = row_reduce(matrix)
    rows = [r.bits for r in reduction.rref.row_vectors()]
    pivot_set = set(reduction.pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for row, pivot in zip(rows, reduction.pivots):
            if (row >> free) & 1:
                bits |= 1 << pivot
        basis.append(BitVec(matrix.cols, bits))
    return basis


class XorBasis:
    """Incremental echelon basis over integer-packed vectors, keyed by leading bit."""

    def __init__(self) -> None:
        self.pivots: dict[int, int] = {}

    def reduce(self, value: int) -> int:
        """Residue of ``value`` after elimination against the basis."""
        while value:
            lead = value.bit_length() - 1
            pivot = self.pivots.get(lead)
            if pivot is None:
                return value
            value ^= pivot
        return 0

    def add(self, value: int) -> bool:
        """Insert ``value``; returns False when it was already in the span."""
        residue = self.reduce(value)
        if residue == 0:
            return False
        self.pivots[residue.bit_length() - 1] = residue
        return True

    def __len__(self) -> int:
        return len(self.pivots)


def rank_of(vectors: Iterable[BitVec | int]) -> int:
    """Rank of a collection of vectors."""
    basis = XorBasis()
    for v in vectors:
        basis.add(v.bits if isinstance(v, BitVec) else v)
    return len(basis)


def in_span(matrix: BitMatrix, vector: BitVec) -> bool:
    """True iff ``vector`` is a GF(2) combination of the columns of ``matrix``."""
    if vector.length != matrix.rows:
        raise DimensionError(f"{vector.length=} does not match {matrix.rows=}")
    basis = XorBasis()
    for column in matrix.columns:
        basis.add(column.bits)
    return basis.reduce(vector.bits) == 0


def mat_vec(matrix: BitMatrix, vector: BitVec) -> BitVec:
    """The product ``A v``."""
    if vector.length != matrix.cols:
        raise DimensionError(f"{vector.length=} does not match {matrix.cols=}")
    bits = 0
    for j, column in enumerate(matrix.columns):
        if (vector.bits >> j) & 1:
            bits ^= column.bits
    return BitVec(matrix.rows, bits)


def mat_mul(left: BitMatrix, right: BitMatrix) -> BitMatrix:
    """The product ``L R``."""
    if left.cols != right.rows:
        raise DimensionError(
            f"cannot multiply {left.rows}x{left.cols} by {right.rows}x{right.cols}",
        )
    return BitMatrix([mat_vec(left, c) for c in right.columns], rows=left.rows)


def random_invertible(size: int, rng: np.random.Generator) -> BitMatrix:
    """A uniformly random invertible matrix, by rejection sampling."""
    while True:
        candidate = BitMatrix.from_numpy(rng.integers(0, 2, size=(size, size)))
        if candidate.rank == size:
            return candidate
