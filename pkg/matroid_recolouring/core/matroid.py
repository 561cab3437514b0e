"""Binary matroids given by the distinct columns of a GF(2) matrix."""
from collections.abc import Iterable, Iterator, Sequence
from functools import lru_cache, total_ordering

import networkx as nx
import structlog

from matroid_recolouring.constants import DEFAULT_MAX_RANK
from matroid_recolouring.core.gf2core import (
    BitMatrix,
    BitVec,
    XorBasis,
    gray_code_span,
    rank_of,
    row_space,
)
from matroid_recolouring.core.graphs import SimpleGraph
from matroid_recolouring.errors import (
    ArgumentError,
    CapacityError,
    DimensionError,
    InternalError,
    LoopError,
    SimplicityError,
)

logger = structlog.getLogger()


@total_ordering
class PointSet:
    """A subset of the points of a host matroid, as a bitmask over point indices."""

    __slots__ = ("size", "mask")

    def __init__(self, size: int, mask: int = 0) -> None:
        if mask < 0 or mask >> size:
            raise ArgumentError(f"{mask=} outside a ground set of {size=}")
        self.size = size
        self.mask = mask

    @classmethod
    def from_indices(cls, size: int, indices: Iterable[int]) -> "PointSet":  # noqa: ANN102
        """Subset containing ``indices``."""
        mask = 0
        for i in indices:
            if not 0 <= i < size:
                raise ArgumentError(f"point {i} outside a ground set of {size=}")
            mask |= 1 << i
        return cls(size, mask)

    def indices(self) -> tuple[int, ...]:
        """Members in increasing order."""
        return tuple(i for i in range(self.size) if (self.mask >> i) & 1)

    def complement(self) -> "PointSet":
        """Points outside the set."""
        return PointSet(self.size, ((1 << self.size) - 1) ^ self.mask)

    def issubset(self, other: "PointSet") -> bool:
        """Inclusion."""
        return self.mask & ~other.mask == 0

    def _combine(self, other: "PointSet", mask: int) -> "PointSet":
        if self.size != other.size:
            raise DimensionError(f"point sets over {self.size} and {other.size} points")
        return PointSet(self.size, mask)

    def __or__(self, other: "PointSet") -> "PointSet":
        return self._combine(other, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        return self._combine(other, self.mask & other.mask)

    def __xor__(self, other: "PointSet") -> "PointSet":
        return self._combine(other, self.mask ^ other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        return self._combine(other, self.mask & ~other.mask)

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.size and bool((self.mask >> index) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.size == other.size and self.mask == other.mask

    def __lt__(self, other: "PointSet") -> bool:
        return (len(self), self.indices()) < (len(other), other.indices())

    def __hash__(self) -> int:
        return hash((self.size, self.mask))

    def __repr__(self) -> str:
        return f"PointSet({set(self.indices())})"


class BinaryMatroid:
    """A simple binary matroid; loops are admitted only with ``allows_loop``.

    The basis is the greedy leftmost set of independent points. For every point we keep its
    coordinates in that basis (bit ``k`` set iff ``basis[k]`` occurs), which gives fundamental
    circuits and linear extensions directly.
    """

    def __init__(
        self,
        points: Sequence[BitVec],
        *,
        ambient_dim: int,
        allows_loop: bool = False,
    ) -> None:
        points = tuple(points)
        if any(p.length != ambient_dim for p in points):
            raise DimensionError(f"every point must have length {ambient_dim=}")
        index: dict[BitVec, int] = {}
        for i, p in enumerate(points):
            if p in index:
                raise SimplicityError(f"point {p} repeated at positions {index[p]} and {i}")
            if not p and not allows_loop:
                raise LoopError(f"zero column at position {i} without allow_loops")
            index[p] = i
        self.points = points
        self.ambient_dim = ambient_dim
        self.allows_loop = allows_loop
        self._index = index

        pivots: dict[int, tuple[int, int]] = {}
        basis: list[int] = []
        coordinates: list[int] = []
        for i, p in enumerate(points):
            value, combo = self._reduce(pivots, p.bits)
            if value:
                k = len(basis)
                basis.append(i)
                pivots[value.bit_length() - 1] = (value, combo ^ (1 << k))
                coordinates.append(1 << k)
            else:
                coordinates.append(combo)
        self._pivots = pivots
        self.basis: tuple[int, ...] = tuple(basis)
        self.coordinates: tuple[int, ...] = tuple(coordinates)
        self._circuits: list[PointSet] | None = None
        self._cocircuits: list[PointSet] | None = None

    @staticmethod
    def _reduce(pivots: dict[int, tuple[int, int]], value: int) -> tuple[int, int]:
        combo = 0
        while value:
            entry = pivots.get(value.bit_length() - 1)
            if entry is None:
                break
            value ^= entry[0]
            combo ^= entry[1]
        return value, combo

    @property
    def size(self) -> int:
        """Number of points."""
        return len(self.points)

    @property
    def rank(self) -> int:
        """Dimension of the point space."""
        return len(self.basis)

    @property
    def loops(self) -> tuple[int, ...]:
        """Indices of zero points."""
        return tuple(i for i, p in enumerate(self.points) if not p)

    @property
    def ground_set(self) -> PointSet:
        """All points."""
        return PointSet(self.size, (1 << self.size) - 1)

    @property
    def representation(self) -> BitMatrix:
        """The representing matrix, one column per point."""
        return BitMatrix(self.points, rows=self.ambient_dim)

    def index_of(self, vector: BitVec) -> int | None:
        """Position of the point equal to ``vector``."""
        return self._index.get(vector)

    def coordinates_of(self, vector: BitVec) -> int | None:
        """Basis coordinates of a vector of the point space, None when outside it."""
        if vector.length != self.ambient_dim:
            raise DimensionError(f"{vector.length=} does not match {self.ambient_dim=}")
        value, combo = self._reduce(self._pivots, vector.bits)
        return None if value else combo

    def from_coordinates(self, combo: int) -> BitVec:
        """The vector with the given basis coordinates."""
        bits = 0
        for k, i in enumerate(self.basis):
            if (combo >> k) & 1:
                bits ^= self.points[i].bits
        return BitVec(self.ambient_dim, bits)

    def span_contains(self, vector: BitVec) -> bool:
        """Membership in the point space."""
        return self.coordinates_of(vector) is not None

    def rank_of(self, subset: PointSet) -> int:
        """Rank of a set of points."""
        return rank_of(self.points[i] for i in subset)

    def vector_sum(self, subset: PointSet) -> BitVec:
        """Sum of the points of ``subset``."""
        bits = 0
        for i in subset:
            bits ^= self.points[i].bits
        return BitVec(self.ambient_dim, bits)

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatroid):
            return NotImplemented
        return self is other or (
            self.ambient_dim == other.ambient_dim and self.points == other.points
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.points))

    def __repr__(self) -> str:
        return f"BinaryMatroid({[str(p) for p in self.points]})"


def from_columns(columns: Sequence[BitVec], *, allow_loops: bool = False) -> BinaryMatroid:
    """Matroid on the given columns, checked for simplicity."""
    if not columns:
        raise DimensionError("a matroid needs at least one column")
    return BinaryMatroid(columns, ambient_dim=columns[0].length, allows_loop=allow_loops)


@lru_cache(maxsize=256)
def graphic(graph: SimpleGraph) -> BinaryMatroid:
    """The cycle matroid, one point ``v_i + v_j`` per edge in edge order."""
    if graph.reflexive:
        raise ArgumentError("graphic matroids need a loopless graph")
    points = [BitVec.from_indices(graph.n, edge) for edge in graph.edges]
    return BinaryMatroid(points, ambient_dim=graph.n)


def restriction(matroid: BinaryMatroid, indices: Iterable[int]) -> BinaryMatroid:
    """The submatroid on the points at ``indices`` (kept in the given order)."""
    points = [matroid.points[i] for i in indices]
    return BinaryMatroid(
        points,
        ambient_dim=matroid.ambient_dim,
        allows_loop=any(not p for p in points),
    )


def fundamental_circuit(matroid: BinaryMatroid, e: int) -> PointSet:
    """The unique circuit inside ``basis + e``."""
    if not 0 <= e < matroid.size:
        raise ArgumentError(f"point {e} outside a matroid of {matroid.size} points")
    combo = matroid.coordinates[e]
    if combo.bit_count() == 1 and matroid.basis[combo.bit_length() - 1] == e:
        raise ArgumentError(f"point {e} belongs to the basis")
    members = [e] + [matroid.basis[k] for k in range(matroid.rank) if (combo >> k) & 1]
    return PointSet.from_indices(matroid.size, members)


def non_basis_points(matroid: BinaryMatroid) -> tuple[int, ...]:
    """Points outside the cached basis."""
    in_basis = set(matroid.basis)
    return tuple(i for i in range(matroid.size) if i not in in_basis)


def fundamental_circuits(matroid: BinaryMatroid) -> list[PointSet]:
    """Fundamental circuits of all non-basis points; a basis of the cycle space."""
    return [fundamental_circuit(matroid, e) for e in non_basis_points(matroid)]


def fundamental_cocircuit(matroid: BinaryMatroid, k: int) -> PointSet:
    """The cocircuit through ``basis[k]`` avoiding the rest of the basis."""
    if not 0 <= k < matroid.rank:
        raise ArgumentError(f"basis position {k} outside rank {matroid.rank}")
    members = [i for i, combo in enumerate(matroid.coordinates) if (combo >> k) & 1]
    return PointSet.from_indices(matroid.size, members)


def is_cycle(matroid: BinaryMatroid, subset: PointSet) -> bool:
    """Points summing to zero."""
    return not matroid.vector_sum(subset)


def is_circuit(matroid: BinaryMatroid, subset: PointSet) -> bool:
    """Minimal nonempty cycle: a cycle whose nullity is one."""
    return bool(subset) and is_cycle(matroid, subset) and (
        len(subset) - matroid.rank_of(subset) == 1
    )


def is_cocycle(matroid: BinaryMatroid, subset: PointSet) -> bool:
    """Even intersection with every fundamental circuit, hence with every cycle."""
    return all(len(subset & z) % 2 == 0 for z in fundamental_circuits(matroid))


def is_cocircuit(matroid: BinaryMatroid, subset: PointSet) -> bool:
    """Minimal nonempty cocycle: removing it drops the rank by exactly one."""
    if subset.size != matroid.size or not subset or not is_cocycle(matroid, subset):
        return False
    return matroid.rank_of(subset.complement()) == matroid.rank - 1


def circuits(matroid: BinaryMatroid, *, max_rank: int = DEFAULT_MAX_RANK) -> list[PointSet]:
    """All circuits, ordered by size then members."""
    nullity = matroid.size - matroid.rank
    if nullity > max_rank:
        raise CapacityError(f"cycle space of dimension {nullity} exceeds {max_rank=}")
    if matroid._circuits is None:
        generators = [z.mask for z in fundamental_circuits(matroid)]
        found = [
            PointSet(matroid.size, mask)
            for mask in gray_code_span(generators)
            if mask and is_circuit(matroid, PointSet(matroid.size, mask))
        ]
        matroid._circuits = sorted(found)
        logger.debug(event="Enumerated circuits", count=len(found), nullity=nullity)
    return list(matroid._circuits)


def cocircuits(matroid: BinaryMatroid, *, max_rank: int = DEFAULT_MAX_RANK) -> list[PointSet]:
    """All cocircuits, ordered by size then members."""
    if matroid.rank > max_rank:
        raise CapacityError(f"row space of rank {matroid.rank} exceeds {max_rank=}")
    if matroid._cocircuits is None:
        found = []
        for row in row_space(matroid.representation, max_rank=max_rank):
            subset = PointSet(matroid.size, row.bits)
            if subset and matroid.rank_of(subset.complement()) == matroid.rank - 1:
                found.append(subset)
        matroid._cocircuits = sorted(found)
        logger.debug(event="Enumerated cocircuits", count=len(found), rank=matroid.rank)
    return list(matroid._cocircuits)


def decompose_cocycle(
    matroid: BinaryMatroid,
    subset: PointSet,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> list[PointSet]:
    """Split a cocycle into disjoint cocircuits, greedily."""
    if not is_cocycle(matroid, subset):
        raise ArgumentError(f"{subset} is not a cocycle")
    parts: list[PointSet] = []
    residual = subset
    candidates = cocircuits(matroid, max_rank=max_rank)
    while residual:
        part = next((c for c in candidates if c.issubset(residual)), None)
        if part is None:
            raise InternalError(f"residual cocycle {residual} contains no cocircuit")
        parts.append(part)
        residual = residual - part
    return parts


def isomorphism(first: BinaryMatroid, second: BinaryMatroid) -> tuple[int, ...] | None:
    """A point bijection preserving cycles both ways, found by backtracking on basis images.

    A bijection of simple binary matroids preserves cycles both ways iff it is the
    restriction of a linear isomorphism of point spaces, so it is determined by the images
    of the basis; they must be independent, and every forced image must be a fresh point.
    """
    if (first.size, first.rank, len(first.loops)) != (second.size, second.rank, len(second.loops)):
        return None
    rank = first.rank
    # points grouped by their highest basis coordinate; loops are handled up front
    groups: list[list[int]] = [[] for _ in range(rank)]
    for i, combo in enumerate(first.coordinates):
        if combo:
            groups[combo.bit_length() - 1].append(i)
    image: list[int | None] = [None] * first.size
    used: set[int] = set()
    for i in first.loops:
        image[i] = second.loops[0]
        used.add(second.loops[0])
    basis_images = [0] * rank
    candidates = [j for j in range(second.size) if second.points[j]]

    def forced(i: int) -> int:
        combo, bits = first.coordinates[i], 0
        for k in range(rank):
            if (combo >> k) & 1:
                bits ^= basis_images[k]
        return bits

    def extend(k: int, span: XorBasis) -> bool:
        if k == rank:
            return True
        for j in candidates:
            if j in used or span.reduce(second.points[j].bits) == 0:
                continue
            basis_images[k] = second.points[j].bits
            placed: list[int] = []
            ok = True
            for i in groups[k]:
                target = second.index_of(BitVec(second.ambient_dim, forced(i)))
                if target is None or target in used:
                    ok = False
                    break
                image[i] = target
                used.add(target)
                placed.append(target)
            if ok:
                child = XorBasis()
                child.pivots = dict(span.pivots)
                child.add(basis_images[k])
                if extend(k + 1, child):
                    return True
            for target in placed:
                used.discard(target)
        return False

    if not extend(0, XorBasis()):
        return None
    return tuple(image)  # type: ignore[arg-type]


class CliqueCopy:
    """An induced copy of M(K_n): vertex vectors ``x_0 = 0, x_1, ..., x_{n-1}``.

    ``edge_points[(i, j)]`` is the index of the host point ``x_i + x_j``.
    """

    def __init__(self, vertices: Sequence[BitVec], edge_points: dict[tuple[int, int], int]) -> None:
        self.vertices = tuple(vertices)
        self.edge_points = dict(edge_points)

    @property
    def n(self) -> int:
        """Clique size."""
        return len(self.vertices)

    def point(self, i: int, j: int) -> int:
        """Host point of the clique edge ``ij``."""
        return self.edge_points[(min(i, j), max(i, j))]

    def __repr__(self) -> str:
        return f"CliqueCopy({[str(v) for v in self.vertices]})"


def _clique_copy(matroid: BinaryMatroid, vertices: Sequence[BitVec]) -> CliqueCopy | None:
    edge_points = {}
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            point = matroid.index_of(vertices[i] + vertices[j])
            if point is None:
                return None
            edge_points[(i, j)] = point
    return CliqueCopy(vertices, edge_points)


def find_clique_copy(matroid: BinaryMatroid, n: int) -> CliqueCopy | None:
    """An induced copy of M(K_n), from an n-clique through 0 in the decision graph.

    The neighbours of 0 in the decision graph are the points; two of them are adjacent iff
    their sum is a point, so cliques through 0 are cliques of this point graph.
    """
    if n < 1:
        raise ArgumentError(f"{n=} must be positive")
    zero = BitVec.zero(matroid.ambient_dim)
    if n == 1:
        return CliqueCopy([zero], {})
    nonzero = [i for i in range(matroid.size) if matroid.points[i]]
    graph = nx.Graph()
    graph.add_nodes_from(nonzero)
    graph.add_edges_from(
        (p, q)
        for a, p in enumerate(nonzero)
        for q in nonzero[a + 1 :]
        if matroid.index_of(matroid.points[p] + matroid.points[q]) is not None
    )
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > n - 1:
            break
        if len(clique) < n - 1:
            continue
        clique = sorted(clique)
        if rank_of(matroid.points[p] for p in clique) != n - 1:
            continue
        copy = _clique_copy(matroid, [zero] + [matroid.points[p] for p in clique])
        if copy is not None:
            return copy
    return None


def largest_clique_copy(matroid: BinaryMatroid) -> CliqueCopy:
    """The copy of M(K_n) with the largest n."""
    best = find_clique_copy(matroid, 1)
    n = 2
    while (copy := find_clique_copy(matroid, n)) is not None:
        best, n = copy, n + 1
    return best  # type: ignore[return-value]
