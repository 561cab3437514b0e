"""Matroid homomorphisms, retractions and dismantling."""
from collections import deque
from collections.abc import Iterator, Sequence

import structlog
from pydantic import BaseModel, ConfigDict

from matroid_recolouring.constants import DEFAULT_MAX_HOMS, DEFAULT_MAX_RANK, DEFAULT_MAX_STATES
from matroid_recolouring.core.catalogue import (
    compact_clique_matroid,
    edge_matroid,
    loop_matroid,
    projective_geometry,
)
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.graphs import GraphColouring
from matroid_recolouring.core.matroid import (
    BinaryMatroid,
    PointSet,
    circuits,
    cocircuits,
    graphic,
    isomorphism,
    non_basis_points,
    restriction,
)
from matroid_recolouring.errors import (
    ArgumentError,
    CapacityError,
    DomainMismatchError,
    InternalError,
)

logger = structlog.getLogger()


class MatroidHom:
    """A point map ``domain -> codomain`` sending circuits to cycles."""

    __slots__ = ("domain", "codomain", "image")

    def __init__(
        self,
        domain: BinaryMatroid,
        codomain: BinaryMatroid,
        image: Sequence[int],
        *,
        check: bool = True,
    ) -> None:
        image = tuple(image)
        if check and not is_homomorphism(domain, codomain, image):
            raise ArgumentError(f"{image=} is not a matroid homomorphism")
        self.domain = domain
        self.codomain = codomain
        self.image = image

    def vector(self, e: int) -> BitVec:
        """Image of point ``e`` as a codomain vector."""
        return self.codomain.points[self.image[e]]

    def __call__(self, e: int) -> int:
        return self.image[e]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatroidHom):
            return NotImplemented
        return (
            self.image == other.image
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __lt__(self, other: "MatroidHom") -> bool:
        return self.image < other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"MatroidHom({list(self.image)})"


def _check_image(domain: BinaryMatroid, codomain: BinaryMatroid, image: Sequence[int]) -> None:
    if len(image) != domain.size:
        raise ArgumentError(f"image of length {len(image)} for {domain.size} domain points")
    bad = [j for j in image if not 0 <= j < codomain.size]
    if bad:
        raise ArgumentError(f"codomain indices {bad} out of range {codomain.size}")


def _forced_bits(domain: BinaryMatroid, basis_bits: Sequence[int], e: int) -> int:
    combo, bits = domain.coordinates[e], 0
    for k, value in enumerate(basis_bits):
        if (combo >> k) & 1:
            bits ^= value
    return bits


def is_homomorphism(
    domain: BinaryMatroid,
    codomain: BinaryMatroid,
    image: Sequence[int],
    *,
    exhaustive: bool = False,
    max_rank: int = DEFAULT_MAX_RANK,
) -> bool:
    """True iff every fundamental circuit sums to zero under ``image``.

    With ``exhaustive`` every circuit is summed as well and the two answers must agree.
    """
    _check_image(domain, codomain, image)
    vectors = [codomain.points[j].bits for j in image]
    basis_bits = [vectors[i] for i in domain.basis]
    fast = all(vectors[e] == _forced_bits(domain, basis_bits, e) for e in non_basis_points(domain))
    if exhaustive:
        slow = True
        for z in circuits(domain, max_rank=max_rank):
            total = 0
            for e in z:
                total ^= vectors[e]
            if total:
                slow = False
                break
        if slow != fast:
            raise InternalError(f"fundamental ({fast}) and full ({slow}) circuit checks disagree")
    return fast


def linear_extension(
    domain: BinaryMatroid,
    codomain: BinaryMatroid,
    basis_images: Sequence[int],
) -> MatroidHom | None:
    """The unique homomorphism with the given images on the domain basis, if any."""
    if len(basis_images) != domain.rank:
        raise ArgumentError(f"{len(basis_images)} basis images for rank {domain.rank}")
    basis_bits = [codomain.points[j].bits for j in basis_images]
    image = []
    for e in range(domain.size):
        j = codomain.index_of(BitVec(codomain.ambient_dim, _forced_bits(domain, basis_bits, e)))
        if j is None:
            return None
        image.append(j)
    return MatroidHom(domain, codomain, image, check=False)


def enumerate_homs(
    domain: BinaryMatroid,
    codomain: BinaryMatroid,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
) -> list[MatroidHom]:
    """All homomorphisms, lexicographic by image array.

    Basis images are chosen one at a time; after choosing the k-th, every point whose
    highest basis coordinate is k has a forced image that must exist in the codomain.
    """
    if codomain.size**domain.rank > max_homs:
        raise CapacityError(f"{codomain.size}^{domain.rank} basis assignments exceed {max_homs=}")
    rank = domain.rank
    groups: list[list[int]] = [[] for _ in range(rank)]
    loops = []
    for e, combo in enumerate(domain.coordinates):
        if combo:
            groups[combo.bit_length() - 1].append(e)
        else:
            loops.append(e)
    image = [0] * domain.size
    if loops:
        codomain_loops = codomain.loops
        if not codomain_loops:
            return []
        for e in loops:
            image[e] = codomain_loops[0]
    basis_bits = [0] * rank
    found: list[tuple[int, ...]] = []

    def extend(k: int) -> None:
        if k == rank:
            found.append(tuple(image))
            return
        for j, point in enumerate(codomain.points):
            basis_bits[k] = point.bits
            for e in groups[k]:
                target = codomain.index_of(
                    BitVec(codomain.ambient_dim, _forced_bits(domain, basis_bits, e)),
                )
                if target is None:
                    break
                image[e] = target
            else:
                extend(k + 1)

    extend(0)
    logger.debug(event="Enumerated matroid homomorphisms", count=len(found))
    return [MatroidHom(domain, codomain, im, check=False) for im in sorted(found)]


def identity(matroid: BinaryMatroid) -> MatroidHom:
    """The identity endomorphism."""
    return MatroidHom(matroid, matroid, range(matroid.size), check=False)


def automorphisms(
    matroid: BinaryMatroid,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
) -> list[MatroidHom]:
    """Endomorphisms that permute the points; the identity comes first."""
    found = [
        alpha
        for alpha in enumerate_homs(matroid, matroid, max_homs=max_homs)
        if len(set(alpha.image)) == matroid.size
    ]
    return sorted(found, key=lambda alpha: alpha.image != tuple(range(matroid.size)))


def compose(beta: MatroidHom, alpha: MatroidHom) -> MatroidHom:
    """``beta`` after ``alpha``."""
    if alpha.codomain != beta.domain:
        raise DomainMismatchError("codomain of the inner map is not the domain of the outer map")
    return MatroidHom(
        alpha.domain,
        beta.codomain,
        [beta.image[j] for j in alpha.image],
        check=False,
    )


def is_retraction(r: MatroidHom) -> bool:
    """Idempotent endomorphism."""
    if r.domain != r.codomain:
        raise ArgumentError("a retraction must be an endomorphism")
    return compose(r, r) == r


def cocircuit_shifts(
    tau: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> Iterator[tuple[PointSet, BitVec, tuple[int, ...]]]:
    """Every well-defined ``tau + c on C`` with ``C`` a cocircuit and ``c`` nonzero.

    For each cocircuit the admissible constants are ``tau(e0) + p`` over codomain points ``p``,
    with ``e0`` the first point of ``C``.
    """
    codomain = tau.codomain
    for cocircuit in cocircuits(tau.domain, max_rank=max_rank):
        members = cocircuit.indices()
        anchor = tau.vector(members[0])
        for point in codomain.points:
            c = anchor + point
            if not c:
                continue
            image = list(tau.image)
            for e in members:
                j = codomain.index_of(tau.vector(e) + c)
                if j is None:
                    break
                image[e] = j
            else:
                yield cocircuit, c, tuple(image)


def dismantling_retractions(
    matroid: BinaryMatroid,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> list[MatroidHom]:
    """Idempotent endomorphisms adjacent to the identity, by image array."""
    found = {}
    for _, _, image in cocircuit_shifts(identity(matroid), max_rank=max_rank):
        r = MatroidHom(matroid, matroid, image, check=False)
        if image not in found and is_retraction(r):
            found[image] = r
    return [found[image] for image in sorted(found)]


def retract_image(r: MatroidHom) -> BinaryMatroid:
    """The submatroid fixed by a retraction."""
    return restriction(r.codomain, sorted(set(r.image)))


def dismantles_to(
    matroid: BinaryMatroid,
    target: BinaryMatroid,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
    max_states: int = DEFAULT_MAX_STATES,
) -> list[MatroidHom] | None:
    """A shortest sequence of dismantling retractions ending at a copy of ``target``.

    Each retraction acts on the image of the previous one. Images are explored breadth-first
    and deduplicated up to isomorphism.
    """
    if isomorphism(matroid, target) is not None:
        return []
    visited = [matroid]
    queue: deque[tuple[BinaryMatroid, list[MatroidHom]]] = deque([(matroid, [])])
    while queue:
        current, sequence = queue.popleft()
        for r in dismantling_retractions(current, max_rank=max_rank):
            image = retract_image(r)
            if any(
                v.size == image.size and isomorphism(v, image) is not None for v in visited
            ):
                continue
            if len(visited) >= max_states:
                raise CapacityError(f"dismantling search visited more than {max_states=} retracts")
            visited.append(image)
            if isomorphism(image, target) is not None:
                logger.debug(event="Found dismantling sequence", length=len(sequence) + 1)
                return [*sequence, r]
            queue.append((image, [*sequence, r]))
    return None


class TrivialityCertificate(BaseModel):
    """A dismantling sequence to the loop or to the edge."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    target: str
    retractions: tuple[MatroidHom, ...]


def triviality_certificate(
    matroid: BinaryMatroid,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
    max_states: int = DEFAULT_MAX_STATES,
) -> TrivialityCertificate | None:
    """Dismantle to M^l(K_1) or M(K_2) when possible."""
    for name, target in (("loop", loop_matroid()), ("edge", edge_matroid())):
        sequence = dismantles_to(matroid, target, max_rank=max_rank, max_states=max_states)
        if sequence is not None:
            return TrivialityCertificate(target=name, retractions=tuple(sequence))
    return None


def induced_graph_hom(f: GraphColouring) -> MatroidHom:
    """The homomorphism M(G) -> M(H) induced by a graph homomorphism ``G -> H``."""
    if f.target.reflexive:
        raise ArgumentError("the target graph must be loopless")
    domain, codomain = graphic(f.source), graphic(f.target)
    image = [f.target.index_of_edge(f.image[u], f.image[v]) for u, v in f.source.edges]
    return MatroidHom(domain, codomain, image, check=False)


def projective_quotient(t: int) -> MatroidHom:
    """M(K_{2^t}) -> PG(t-1,2): the weight one columns go bijectively onto the points."""
    domain = compact_clique_matroid(1 << t)
    codomain = projective_geometry(t - 1)
    hom = linear_extension(domain, codomain, list(range(domain.rank)))
    if hom is None:
        raise InternalError(f"quotient of M(K_{1 << t}) onto PG({t - 1},2) failed to extend")
    return hom
