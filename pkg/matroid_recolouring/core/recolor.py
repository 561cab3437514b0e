"""The recolouring graph Col(M, N) and witnessed paths in it."""
from collections.abc import Sequence

import dask.bag
import networkx as nx
import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from matroid_recolouring.config import default_scheduler
from matroid_recolouring.constants import DEFAULT_MAX_HOMS, DEFAULT_MAX_RANK, DEFAULT_MAX_STATES
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.hom import (
    MatroidHom,
    cocircuit_shifts,
    compose,
    enumerate_homs,
    is_homomorphism,
)
from matroid_recolouring.core.matroid import (
    BinaryMatroid,
    PointSet,
    decompose_cocycle,
    fundamental_cocircuit,
    is_cocircuit,
)
from matroid_recolouring.core.search import BreadthFirstSearch
from matroid_recolouring.errors import (
    ArgumentError,
    DomainMismatchError,
    InternalError,
    PreconditionError,
)

logger = structlog.getLogger()


class CocircuitWitness(BaseModel):
    """The step ``sigma = tau + constant on cocircuit``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    cocircuit: PointSet
    constant: BitVec

    def __str__(self) -> str:
        return f"{list(self.cocircuit.indices())}+{self.constant}"


class RecolPath(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    homs: tuple[MatroidHom, ...]
    steps: tuple[CocircuitWitness, ...]

    @model_validator(mode="after")
    def _one_witness_per_step(self) -> "RecolPath":
        if not self.homs or len(self.steps) != len(self.homs) - 1:
            raise ValueError(f"{len(self.homs)} homs need {len(self.homs) - 1} witnesses")
        return self

    @property
    def length(self) -> int:
        """Number of steps."""
        return len(self.steps)

    @property
    def start(self) -> MatroidHom:
        """First hom."""
        return self.homs[0]

    @property
    def end(self) -> MatroidHom:
        """Last hom."""
        return self.homs[-1]


class RecolouringGraph(BaseModel):
    """Explicit Col(M, N); ``witnesses[k]`` labels ``edges[k]``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    homs: tuple[MatroidHom, ...]
    edges: tuple[tuple[int, int], ...]
    witnesses: tuple[CocircuitWitness, ...]

    def to_networkx(self) -> nx.Graph:
        """Vertices are hom indices."""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.homs)))
        graph.add_edges_from(self.edges)
        return graph

    def components(self) -> list[list[int]]:
        """Components as sorted index lists; the first entry is the lexicographically least hom."""
        return sorted(sorted(c) for c in nx.connected_components(self.to_networkx()))


def _check_same_maps(tau: MatroidHom, sigma: MatroidHom) -> None:
    if tau.domain != sigma.domain or tau.codomain != sigma.codomain:
        raise DomainMismatchError("homs have different domains or codomains")


def adjacent(tau: MatroidHom, sigma: MatroidHom) -> CocircuitWitness | None:
    """The witness of an edge ``tau ~ sigma``, if there is one."""
    _check_same_maps(tau, sigma)
    changed = [e for e in range(tau.domain.size) if tau.image[e] != sigma.image[e]]
    difference = PointSet.from_indices(tau.domain.size, changed)
    if not difference or not is_cocircuit(tau.domain, difference):
        return None
    constant = tau.vector(changed[0]) + sigma.vector(changed[0])
    if any(tau.vector(e) + sigma.vector(e) != constant for e in changed):
        raise InternalError(f"homs differ on cocircuit {difference} by a non-constant")
    return CocircuitWitness(cocircuit=difference, constant=constant)


def neighbor_moves(
    tau: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> list[tuple[MatroidHom, CocircuitWitness]]:
    """Neighbours of ``tau`` with their witnesses, by image array."""
    moves: dict[tuple[int, ...], CocircuitWitness] = {}
    for cocircuit, constant, image in cocircuit_shifts(tau, max_rank=max_rank):
        moves.setdefault(image, CocircuitWitness(cocircuit=cocircuit, constant=constant))
    return [
        (MatroidHom(tau.domain, tau.codomain, image, check=False), moves[image])
        for image in sorted(moves)
    ]


def neighbors(tau: MatroidHom, *, max_rank: int = DEFAULT_MAX_RANK) -> list[MatroidHom]:
    """All ``tau + c on C`` that are homomorphisms."""
    return [sigma for sigma, _ in neighbor_moves(tau, max_rank=max_rank)]


def _pairwise_edges(homs: Sequence[MatroidHom], i: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(i + 1, len(homs)) if adjacent(homs[i], homs[j]) is not None]


def build_col_graph(
    domain: BinaryMatroid,
    codomain: BinaryMatroid,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
    max_rank: int = DEFAULT_MAX_RANK,
    cross_check: bool = False,
    scheduler: str | None = None,
) -> RecolouringGraph:
    """Col(domain, codomain) with every edge witnessed.

    Edges come from neighbour generation; ``cross_check`` also scans all pairs with
    ``adjacent`` and requires the same edge set.
    """
    homs = enumerate_homs(domain, codomain, max_homs=max_homs)
    index = {tau.image: i for i, tau in enumerate(homs)}
    found: dict[tuple[int, int], CocircuitWitness] = {}
    for i, tau in enumerate(homs):
        for sigma, witness in neighbor_moves(tau, max_rank=max_rank):
            j = index.get(sigma.image)
            if j is None:
                raise InternalError(f"neighbour {sigma} missing from the enumeration")
            found.setdefault((min(i, j), max(i, j)), witness)
    edges = sorted(found)
    if cross_check and homs:
        pairwise = (
            dask.bag.from_sequence(range(len(homs)), npartitions=min(len(homs), 16))
            .map(lambda i: _pairwise_edges(homs, i))
            .flatten()
            .compute(scheduler=scheduler or default_scheduler())
        )
        if sorted(pairwise) != edges:
            raise InternalError("neighbour generation and pairwise adjacency disagree")
    logger.debug(event="Built recolouring graph", homs=len(homs), edges=len(edges))
    return RecolouringGraph(
        homs=tuple(homs),
        edges=tuple(edges),
        witnesses=tuple(found[e] for e in edges),
    )


def _search(tau: MatroidHom, max_rank: int, max_states: int) -> BreadthFirstSearch:
    domain, codomain = tau.domain, tau.codomain

    def expand(image: tuple[int, ...]) -> list[tuple[tuple[int, ...], CocircuitWitness]]:
        current = MatroidHom(domain, codomain, image, check=False)
        return [(s.image, w) for s, w in neighbor_moves(current, max_rank=max_rank)]

    return BreadthFirstSearch(expand, max_states=max_states)


def recol_decide(
    tau: MatroidHom,
    sigma: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
    max_states: int = DEFAULT_MAX_STATES,
) -> RecolPath | None:
    """A shortest witnessed path from ``tau`` to ``sigma``, or None if there is none."""
    _check_same_maps(tau, sigma)
    steps = _search(tau, max_rank, max_states).path(tau.image, sigma.image)
    if steps is None:
        return None
    return RecolPath(
        homs=tuple(MatroidHom(tau.domain, tau.codomain, im, check=False) for im, _ in steps),
        steps=tuple(w for _, w in steps[1:]),
    )


def component_images(
    tau: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
    max_states: int = DEFAULT_MAX_STATES,
) -> set[tuple[int, ...]]:
    """Image arrays of every hom connected to ``tau``."""
    return set(_search(tau, max_rank, max_states).component(tau.image))


def components(
    domain: BinaryMatroid,
    codomain: BinaryMatroid,
    *,
    max_homs: int = DEFAULT_MAX_HOMS,
    max_rank: int = DEFAULT_MAX_RANK,
) -> list[list[MatroidHom]]:
    """Connected components of Col(domain, codomain), each led by its least hom."""
    graph = build_col_graph(domain, codomain, max_homs=max_homs, max_rank=max_rank)
    return [[graph.homs[i] for i in c] for c in graph.components()]


def validate_path(path: RecolPath) -> bool:
    """Every step is an edge carrying exactly its recorded witness."""
    return all(
        adjacent(before, after) == witness
        for before, after, witness in zip(path.homs, path.homs[1:], path.steps)
    )


def push_path(f: MatroidHom, path: RecolPath) -> RecolPath:
    """The image of a path under ``tau -> f . tau``; steps that collapse are dropped."""
    homs = [compose(f, path.start)]
    steps: list[CocircuitWitness] = []
    for before, after, witness in zip(path.homs, path.homs[1:], path.steps):
        pushed = compose(f, after)
        if pushed == homs[-1]:
            continue
        step = adjacent(homs[-1], pushed)
        e = witness.cocircuit.indices()[0]
        expected = f.vector(before.image[e]) + f.vector(after.image[e])
        if step is None or step.cocircuit != witness.cocircuit or step.constant != expected:
            raise InternalError(
                f"pushed step across {witness} is not an edge on the same cocircuit",
            )
        homs.append(pushed)
        steps.append(step)
    return RecolPath(homs=tuple(homs), steps=tuple(steps))


def shift_hom(tau: MatroidHom, cocircuit: PointSet, constant: BitVec) -> MatroidHom:
    image = list(tau.image)
    for e in cocircuit:
        j = tau.codomain.index_of(tau.vector(e) + constant)
        if j is None:
            raise InternalError(f"shift by {constant} leaves the codomain at point {e}")
        image[e] = j
    if not is_homomorphism(tau.domain, tau.codomain, image):
        raise InternalError(f"shift by {constant} on {cocircuit} is not a homomorphism")
    return MatroidHom(tau.domain, tau.codomain, image, check=False)


def lift_walk(
    alpha: MatroidHom,
    beta: MatroidHom,
    beta_prime: MatroidHom,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
) -> RecolPath:
    """A walk from ``beta . alpha`` to ``beta_prime . alpha`` for an edge ``beta ~ beta_prime``.

    The preimage under ``alpha`` of the edge cocircuit is a cocycle; its cocircuits are
    recoloured one at a time by the same constant.
    """
    witness = adjacent(beta, beta_prime)
    if witness is None:
        raise ArgumentError("beta and beta_prime are not adjacent")
    preimage = PointSet.from_indices(
        alpha.domain.size,
        [x for x in range(alpha.domain.size) if alpha.image[x] in witness.cocircuit],
    )
    current = compose(beta, alpha)
    homs = [current]
    steps = []
    for part in decompose_cocycle(alpha.domain, preimage, max_rank=max_rank):
        current = shift_hom(current, part, witness.constant)
        homs.append(current)
        steps.append(CocircuitWitness(cocircuit=part, constant=witness.constant))
    if current != compose(beta_prime, alpha):
        raise InternalError("lifted walk does not end at beta_prime . alpha")
    return RecolPath(homs=tuple(homs), steps=tuple(steps))


def projective_path(tau: MatroidHom, sigma: MatroidHom) -> RecolPath:
    """Direct path between homs into a codomain containing its whole point space.

    Basis point ``b_k`` is fixed in turn by shifting its fundamental cocircuit, so the length
    is the number of basis points where ``tau`` and ``sigma`` differ.
    """
    _check_same_maps(tau, sigma)
    codomain = tau.codomain
    if codomain.size != 1 << codomain.rank:
        raise PreconditionError("codomain must contain every vector of its point space")
    current = tau
    homs = [current]
    steps = []
    for k, b in enumerate(tau.domain.basis):
        constant = current.vector(b) + sigma.vector(b)
        if not constant:
            continue
        cocircuit = fundamental_cocircuit(tau.domain, k)
        current = shift_hom(current, cocircuit, constant)
        homs.append(current)
        steps.append(CocircuitWitness(cocircuit=cocircuit, constant=constant))
    if current != sigma:
        raise InternalError("projective path does not end at sigma")
    return RecolPath(homs=tuple(homs), steps=tuple(steps))
