import time
from pathlib import Path

import dask.bag
import structlog

from matroid_recolouring.config import Caps, default_scheduler
from matroid_recolouring.constants import MIN_VALID_SIZE_BYTES
from matroid_recolouring.core.catalogue import clique_matroid
from matroid_recolouring.core.decision import (
    DecisionGraph,
    TutteContext,
    decision_graph,
    tutte_phi,
    tutte_tau,
)
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.graphs import (
    ColouringGraph,
    GraphColouring,
    KempePath,
    build_gcol_graph,
    build_kcol_graph,
    kempe_decide,
    kempe_neighbors,
)
from matroid_recolouring.core.hom import (
    MatroidHom,
    TrivialityCertificate,
    dismantles_to,
    enumerate_homs,
    is_homomorphism,
    triviality_certificate,
)
from matroid_recolouring.core.matroid import BinaryMatroid, graphic
from matroid_recolouring.core.recolor import (
    RecolouringGraph,
    RecolPath,
    adjacent,
    build_col_graph,
    recol_decide,
)
from matroid_recolouring.core.reduction import (
    GadgetInstance,
    build_gadget,
    lift_hom,
    verify_reduction,
)
from matroid_recolouring.errors import ArgumentError, DimensionError
from matroid_recolouring.models.reader import ReaderInterface
from matroid_recolouring.models.reports import CheckResult, ReductionReport, VerificationReport
from matroid_recolouring.models.storage import StorageInterface
from matroid_recolouring.outputs.dot.exporter import DotExporter, Renderable
from matroid_recolouring.outputs.text.writer import format_gadget_map, format_graph, format_matroid
from matroid_recolouring.services.checks import CHECKS, Check

logger = structlog.getLogger()


class ReconfigurationService:
    """Service class for the recolouring toolkit.

    Each method implements a use case; inputs are read through ``reader`` and every
    exported artifact goes through ``storer``.
    """

    def __init__(
        self,
        *,
        reader: ReaderInterface,
        storer: StorageInterface,
        caps: Caps | None = None,
        scheduler: str | None = None,
    ) -> None:
        self.reader = reader
        self.storer = storer
        self.caps = caps or Caps()
        self.scheduler = scheduler or default_scheduler()
        self.exporter = DotExporter(storer=storer)

    def _load_pair(
        self,
        domain_path: Path,
        codomain_path: Path,
        allow_loops: bool,
    ) -> tuple[BinaryMatroid, BinaryMatroid]:
        return (
            self.reader.read_matroid(path=domain_path, allow_loops=allow_loops),
            self.reader.read_matroid(path=codomain_path, allow_loops=allow_loops),
        )

    def store_text(self, text: str, *, destination_path: Path) -> Path:
        """Write a rendered artifact, replacing any earlier one."""
        if self.storer.exists(path=destination_path):
            logger.warning(event="Replacing stored artifact", destination_path=destination_path)
        path = self.storer.store(text=text, destination_path=destination_path)
        if not self.storer.is_valid(path=path, min_size_bytes=MIN_VALID_SIZE_BYTES):
            raise OSError(f"nothing was written to {path=}")
        return path

    def export_dot(self, graph: Renderable, *, destination_path: Path) -> Path:
        """Write a graph as DOT."""
        return self.exporter.export(graph, destination_path=destination_path)

    def check_hom(
        self,
        *,
        domain_path: Path,
        codomain_path: Path,
        hom_path: Path,
        allow_loops: bool = False,
    ) -> bool:
        """Whether the stored map is a matroid homomorphism."""
        domain, codomain = self._load_pair(domain_path, codomain_path, allow_loops)
        image = self.reader.read_image(path=hom_path)
        result = is_homomorphism(domain, codomain, image)
        logger.info(event="Check hom", hom_path=hom_path, result=result)
        return result

    def enum_homs(
        self,
        *,
        domain_path: Path,
        codomain_path: Path,
        allow_loops: bool = False,
    ) -> list[MatroidHom]:
        """All homomorphisms, lexicographic."""
        domain, codomain = self._load_pair(domain_path, codomain_path, allow_loops)
        homs = enumerate_homs(domain, codomain, max_homs=self.caps.max_homs)
        logger.info(event="Enumerate homs", count=len(homs))
        return homs

    def recol(
        self,
        *,
        domain_path: Path,
        codomain_path: Path,
        from_path: Path,
        to_path: Path,
        allow_loops: bool = False,
    ) -> RecolPath | None:
        """A shortest witnessed path between two stored homs, or None."""
        start_time = time.perf_counter()
        domain, codomain = self._load_pair(domain_path, codomain_path, allow_loops)
        tau = self.reader.read_hom(path=from_path, domain=domain, codomain=codomain)
        sigma = self.reader.read_hom(path=to_path, domain=domain, codomain=codomain)
        logger.info(event="Recolour: START", points=domain.size, max_states=self.caps.max_states)
        path = recol_decide(
            tau,
            sigma,
            max_rank=self.caps.max_rank,
            max_states=self.caps.max_states,
        )
        logger.info(
            event="Recolour: END",
            connected=path is not None,
            length=None if path is None else path.length,
            elapsed_time_secs=time.perf_counter() - start_time,
        )
        return path

    def check_path(
        self,
        *,
        domain_path: Path,
        codomain_path: Path,
        path_path: Path,
        allow_loops: bool = False,
    ) -> bool:
        """Whether consecutive homs of a stored path are adjacent in Col(M, N)."""
        domain, codomain = self._load_pair(domain_path, codomain_path, allow_loops)
        homs = self.reader.read_homs(path=path_path, domain=domain, codomain=codomain)
        broken = [k for k in range(1, len(homs)) if adjacent(homs[k - 1], homs[k]) is None]
        if broken:
            logger.warning(
                event="Path steps are not recolourings",
                path_path=path_path,
                steps=broken,
            )
        logger.info(event="Check path", path_path=path_path, length=len(homs) - 1)
        return not broken

    def colouring_graph(
        self,
        *,
        domain_path: Path,
        codomain_path: Path,
        allow_loops: bool = False,
        cross_check: bool = False,
    ) -> RecolouringGraph:
        """The explicit Col(M, N)."""
        domain, codomain = self._load_pair(domain_path, codomain_path, allow_loops)
        return build_col_graph(
            domain,
            codomain,
            max_homs=self.caps.max_homs,
            max_rank=self.caps.max_rank,
            cross_check=cross_check,
            scheduler=self.scheduler,
        )

    def decision_graph(
        self,
        *,
        matroid_path: Path,
        universal: bool = True,
        allow_loops: bool = False,
        edges_path: Path | None = None,
    ) -> DecisionGraph:
        """D_u(N), or D(N, A) for the stored representation.

        With ``edges_path`` the underlying graph is stored as ``.edges``, ready for the Tutte
        and Kempe commands.
        """
        matroid = self.reader.read_matroid(path=matroid_path, allow_loops=allow_loops)
        decision = decision_graph(matroid, universal=universal, max_rank=self.caps.max_rank)
        if edges_path is not None:
            self.store_text(format_graph(decision.graph), destination_path=edges_path)
        return decision

    def tutte_phi(
        self,
        *,
        graph_path: Path,
        matroid_path: Path,
        hom_path: Path,
        root_colour: str,
        root: int = 0,
    ) -> GraphColouring:
        """The colouring ``phi_{tau,b}`` of G into D_u(N)."""
        graph = self.reader.read_graph(path=graph_path)
        decision = self.decision_graph(matroid_path=matroid_path)
        tau = self.reader.read_hom(path=hom_path, domain=graphic(graph), codomain=decision.matroid)
        try:
            b = BitVec.from_str(root_colour)
        except DimensionError as exc:
            raise ArgumentError(f"{root_colour=} is not a bitstring") from exc
        return tutte_phi(tau, TutteContext(graph, root), b, decision)

    def tutte_tau(
        self,
        *,
        graph_path: Path,
        matroid_path: Path,
        colouring_path: Path,
    ) -> MatroidHom:
        """The hom ``tau_phi`` of a colouring of G into D_u(N)."""
        graph = self.reader.read_graph(path=graph_path)
        decision = self.decision_graph(matroid_path=matroid_path)
        phi = self.reader.read_colouring(path=colouring_path, source=graph, target=decision.graph)
        return tutte_tau(phi, decision)

    def kempe_decide(
        self,
        *,
        graph_path: Path,
        matroid_path: Path,
        from_path: Path,
        to_path: Path,
    ) -> KempePath | None:
        """A shortest Kempe path between two colourings of G into D_u(N), or None."""
        graph = self.reader.read_graph(path=graph_path)
        decision = self.decision_graph(matroid_path=matroid_path)
        phi = self.reader.read_colouring(path=from_path, source=graph, target=decision.graph)
        psi = self.reader.read_colouring(path=to_path, source=graph, target=decision.graph)
        path = kempe_decide(phi, psi, max_states=self.caps.max_states)
        logger.info(event="Kempe decide", connected=path is not None)
        return path

    def kempe_neighbors(
        self,
        *,
        graph_path: Path,
        matroid_path: Path,
        colouring_path: Path,
    ) -> list[GraphColouring]:
        """Colourings one Kempe move away."""
        graph = self.reader.read_graph(path=graph_path)
        decision = self.decision_graph(matroid_path=matroid_path)
        phi = self.reader.read_colouring(path=colouring_path, source=graph, target=decision.graph)
        return kempe_neighbors(phi)

    def kempe_graph(
        self,
        *,
        graph_path: Path,
        matroid_path: Path,
        kempe: bool = True,
    ) -> ColouringGraph:
        """kCol(G, D_u(N)), or gCol when only single vertices may change colour."""
        graph = self.reader.read_graph(path=graph_path)
        decision = self.decision_graph(matroid_path=matroid_path)
        build = build_kcol_graph if kempe else build_gcol_graph
        found = build(graph, decision.graph, max_homs=self.caps.max_homs)
        logger.info(
            event="Colouring graph",
            kempe=kempe,
            colourings=len(found.colourings),
            components=len(found.components()),
        )
        return found

    def dismantle(
        self,
        *,
        matroid_path: Path,
        target_path: Path | None = None,
        allow_loops: bool = False,
    ) -> list[MatroidHom] | TrivialityCertificate | None:
        """A dismantling sequence to the target, or a triviality certificate without one."""
        matroid = self.reader.read_matroid(path=matroid_path, allow_loops=allow_loops)
        if target_path is None:
            return triviality_certificate(
                matroid,
                max_rank=self.caps.max_rank,
                max_states=self.caps.max_states,
            )
        target = self.reader.read_matroid(path=target_path, allow_loops=allow_loops)
        return dismantles_to(
            matroid,
            target,
            max_rank=self.caps.max_rank,
            max_states=self.caps.max_states,
        )

    def gadget_build(
        self,
        *,
        source_path: Path,
        target_path: Path,
        n: int | None = None,
        destination_path: Path | None = None,
    ) -> GadgetInstance:
        """Construct M*; with a destination, store it as ``.bm`` plus a ``.map`` sidecar."""
        source, target = self._load_pair(source_path, target_path, False)
        g = build_gadget(source, target, n)
        if destination_path is not None:
            self.store_text(format_matroid(g.matroid), destination_path=destination_path)
            self.store_text(
                format_gadget_map(g),
                destination_path=destination_path.with_suffix(".map"),
            )
        return g

    def gadget_lift(
        self,
        *,
        source_path: Path,
        target_path: Path,
        hom_path: Path,
        n: int | None = None,
    ) -> MatroidHom:
        """s(tau) for a stored hom of M into M(K_4)."""
        g = self.gadget_build(source_path=source_path, target_path=target_path, n=n)
        tau = self.reader.read_hom(path=hom_path, domain=g.source, codomain=clique_matroid(4))
        return lift_hom(g, tau)

    def gadget_verify(
        self,
        *,
        source_path: Path,
        target_path: Path,
        n: int | None = None,
    ) -> ReductionReport:
        """Check the reduction exhaustively on one instance."""
        source, target = self._load_pair(source_path, target_path, False)
        return verify_reduction(
            source,
            target,
            n,
            max_homs=self.caps.max_homs,
            max_rank=self.caps.max_rank,
            max_states=self.caps.max_states,
            scheduler=self.scheduler,
        )

    def _run_check(self, named: tuple[str, Check]) -> CheckResult:
        name, check = named
        start_time = time.perf_counter()
        # nested bags inside a check stay on the synchronous scheduler
        passed, detail = check(self.caps, "synchronous")
        elapsed = time.perf_counter() - start_time
        if not passed:
            logger.error(event="Check failed", check=name, detail=detail)
        logger.debug(event="Check done", check=name, passed=passed, elapsed_time_secs=elapsed)
        return CheckResult(name=name, passed=passed, detail=detail, elapsed_time_secs=elapsed)

    def verify(self, checks: tuple[tuple[str, Check], ...] = CHECKS) -> VerificationReport:
        """Run the verification suite; results keep the suite's order."""
        start_time = time.perf_counter()
        logger.info(event="Verify: START", checks=len(checks), scheduler=self.scheduler)
        results: list[CheckResult] = (
            dask.bag.from_sequence(seq=list(checks), npartitions=len(checks))
            .map(self._run_check)
            .compute(scheduler=self.scheduler)
            if checks
            else []
        )
        report = VerificationReport(checks=results)
        logger.info(
            event="Verify: END",
            passed=sum(c.passed for c in results),
            failed=sum(not c.passed for c in results),
            elapsed_time_secs=time.perf_counter() - start_time,
        )
        return report

