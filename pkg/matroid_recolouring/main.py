from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from pathlib import Path

import structlog
import typer
from typing_extensions import Annotated

from matroid_recolouring import constants
from matroid_recolouring.config import Caps, configure_logging
from matroid_recolouring.core.hom import TrivialityCertificate
from matroid_recolouring.errors import CapacityError, InternalError, RecolouringError
from matroid_recolouring.inputs.text.reader import TextReader
from matroid_recolouring.models.reader import ReaderInterface
from matroid_recolouring.models.storage import StorageInterface
from matroid_recolouring.outputs.localfs.client import LocalClient
from matroid_recolouring.outputs.text.writer import (
    format_colouring_components,
    format_components,
    format_decision_summary,
    format_gadget_map,
    format_hom,
    format_homs,
    format_kempe_path,
    format_matroid,
    format_path,
    format_reduction_report,
)
from matroid_recolouring.services.service import ReconfigurationService
from matroid_recolouring.utils import ExitCode, SchedulerType

configure_logging()
logger = structlog.getLogger()
app = typer.Typer(help="Binary matroid homomorphisms and their recolouring graphs.")
tutte_app = typer.Typer(help="The Tutte connection between M(G) -> N and G -> D_u(N).")
kempe_app = typer.Typer(help="Kempe recolouring of colourings G -> D_u(N).")
gadget_app = typer.Typer(help="The reduction gadget M* for a target containing M(K_5).")
app.add_typer(tutte_app, name="tutte")
app.add_typer(kempe_app, name="kempe")
app.add_typer(gadget_app, name="gadget")


class StorageLocation(str, Enum):
    LOCAL_FS = "local"


class InputFormat(str, Enum):
    TEXT = "text"


def load_storage(storage: StorageLocation) -> StorageInterface:
    """Load storer."""
    match storage:
        case StorageLocation.LOCAL_FS:
            storer = LocalClient()
        case _:
            raise NotImplementedError(f"{storage=} not implemented yet!")

    return storer


def load_reader(input_format: InputFormat) -> ReaderInterface:
    """Load reader."""
    match input_format:
        case InputFormat.TEXT:
            reader = TextReader()
        case _:
            raise NotImplementedError(f"{input_format=} not implemented yet!")

    return reader


@contextmanager
def exit_codes() -> Iterator[None]:
    """Translate library errors into the exit-code contract."""
    try:
        yield
    except InternalError:
        raise
    except CapacityError as exc:
        typer.echo(f"capacity exceeded: {exc}", err=True)
        raise typer.Exit(code=ExitCode.CAPACITY) from exc
    except (RecolouringError, FileNotFoundError) as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=ExitCode.USAGE) from exc


def answer(yes: bool) -> None:
    """Print YES or NO; NO exits with code 1."""
    typer.echo("YES" if yes else "NO")
    if not yes:
        raise typer.Exit(code=ExitCode.NO)


def emit(service: ReconfigurationService, text: str, out: Path | None) -> None:
    """Print ``text``, or store it when an output path is given."""
    if out is None:
        typer.echo(text, nl=False)
    else:
        service.store_text(text, destination_path=out)


DomainOption = Annotated[Path, typer.Option("--domain", "-m", help="the domain matroid (.bm).")]
CodomainOption = Annotated[
    Path,
    typer.Option("--codomain", "-n", help="the codomain matroid (.bm)."),
]
GraphOption = Annotated[Path, typer.Option("--graph", "-g", help="the graph (.edges).")]
LoopsOption = Annotated[
    bool,
    typer.Option("--loops", help="accept zero columns (loops) in the matroid files."),
]
OutOption = Annotated[
    Path | None,
    typer.Option("--out", "-o", help="store the output at this path instead of printing it."),
]
SizeOption = Annotated[
    int | None,
    typer.Option("--size", help="the clique size n of the copy of M(K_n) used in N."),
]


@app.callback()
def main(
    ctx: typer.Context,
    max_rank: Annotated[
        int,
        typer.Option(min=0, help="the largest rank enumerated exhaustively."),
    ] = constants.DEFAULT_MAX_RANK,
    max_homs: Annotated[
        int,
        typer.Option(min=1, help="the largest number of homomorphisms enumerated."),
    ] = constants.DEFAULT_MAX_HOMS,
    max_states: Annotated[
        int,
        typer.Option(min=1, help="the largest number of states visited by a search."),
    ] = constants.DEFAULT_MAX_STATES,
    storage: Annotated[
        StorageLocation,
        typer.Option(help="the location where to store outputs."),
    ] = StorageLocation.LOCAL_FS,
    input_format: Annotated[
        InputFormat,
        typer.Option(help="the format of input files."),
    ] = InputFormat.TEXT,
    scheduler: Annotated[
        SchedulerType | None,
        typer.Option(help="the dask scheduler, defaults to the THREADS setting."),
    ] = None,
) -> None:
    """Load resources shared by every command."""
    service = ReconfigurationService(
        reader=load_reader(input_format=input_format),
        storer=load_storage(storage=storage),
        caps=Caps(max_rank=max_rank, max_homs=max_homs, max_states=max_states),
        scheduler=None if scheduler is None else scheduler.value,
    )
    logger.debug(
        event="Service loaded.",
        command=ctx.invoked_subcommand,
        scheduler=service.scheduler,
        **service.caps.model_dump(),
    )
    ctx.obj = service


@app.command()
def check_hom(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    hom: Annotated[Path, typer.Option("--hom", help="the map to check (.hom).")],
    loops: LoopsOption = False,
) -> None:
    """Decide whether a map sends every cycle of M to a cycle of N."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        result = service.check_hom(
            domain_path=domain,
            codomain_path=codomain,
            hom_path=hom,
            allow_loops=loops,
        )
    answer(result)


@app.command()
def enum_homs(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    count: Annotated[bool, typer.Option("--count", help="only print the number of homs.")] = False,
    loops: LoopsOption = False,
    out: OutOption = None,
) -> None:
    """List Hom(M, N) in lexicographic order."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        homs = service.enum_homs(domain_path=domain, codomain_path=codomain, allow_loops=loops)
        if count:
            typer.echo(len(homs))
        else:
            emit(service, format_homs(homs), out)


@app.command()
def recol(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    start: Annotated[Path, typer.Option("--from", help="the first hom (.hom).")],
    end: Annotated[Path, typer.Option("--to", help="the second hom (.hom).")],
    path: Annotated[
        bool,
        typer.Option("--path/--decide", help="print a shortest witnessed path, or only YES/NO."),
    ] = True,
    loops: LoopsOption = False,
    out: OutOption = None,
) -> None:
    """Decide whether two homs lie in the same component of Col(M, N)."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        found = service.recol(
            domain_path=domain,
            codomain_path=codomain,
            from_path=start,
            to_path=end,
            allow_loops=loops,
        )
        if found is not None and path:
            emit(service, format_path(found), out)
    if found is None or not path:
        answer(found is not None)


@app.command()
def check_path(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    path: Annotated[Path, typer.Option("--path", help="a path file as written by recol.")],
    loops: LoopsOption = False,
) -> None:
    """Decide whether every step of a stored path is a recolouring of one cocircuit."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        result = service.check_path(
            domain_path=domain,
            codomain_path=codomain,
            path_path=path,
            allow_loops=loops,
        )
    answer(result)


@app.command()
def components(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    dot: Annotated[
        Path | None,
        typer.Option("--dot", help="export Col(M, N) as DOT at this path."),
    ] = None,
    cross_check: Annotated[
        bool,
        typer.Option(help="check neighbour generation against pairwise adjacency."),
    ] = False,
    loops: LoopsOption = False,
) -> None:
    """Connected components of Col(M, N)."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        graph = service.colouring_graph(
            domain_path=domain,
            codomain_path=codomain,
            allow_loops=loops,
            cross_check=cross_check,
        )
        typer.echo(format_components(graph), nl=False)
        if dot is not None:
            service.export_dot(graph, destination_path=dot)


@app.command()
def decision_graph(
    ctx: typer.Context,
    codomain: CodomainOption,
    non_universal: Annotated[
        bool,
        typer.Option("--non-universal", help="use the stored representation, D(N, A)."),
    ] = False,
    dot: Annotated[
        Path | None,
        typer.Option("--dot", help="export the decision graph as DOT at this path."),
    ] = None,
    edges: Annotated[
        Path | None,
        typer.Option("--edges", help="store the underlying graph as .edges at this path."),
    ] = None,
    loops: LoopsOption = False,
) -> None:
    """Summarize the decision graph of N."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        decision = service.decision_graph(
            matroid_path=codomain,
            universal=not non_universal,
            allow_loops=loops,
            edges_path=edges,
        )
        typer.echo(format_decision_summary(decision), nl=False)
        if dot is not None:
            service.export_dot(decision, destination_path=dot)


@tutte_app.command("phi")
def tutte_phi(
    ctx: typer.Context,
    graph: GraphOption,
    codomain: CodomainOption,
    hom: Annotated[Path, typer.Option("--hom", help="a hom M(G) -> N (.hom).")],
    root_colour: Annotated[
        str,
        typer.Option(help="the colour b of the root, a bitstring of length rank(N)."),
    ],
    root: Annotated[int, typer.Option(min=0, help="the root vertex.")] = 0,
    out: OutOption = None,
) -> None:
    """The colouring of G into D_u(N) with the root coloured b."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        phi = service.tutte_phi(
            graph_path=graph,
            matroid_path=codomain,
            hom_path=hom,
            root_colour=root_colour,
            root=root,
        )
        emit(service, format_hom(phi), out)


@tutte_app.command("tau")
def tutte_tau(
    ctx: typer.Context,
    graph: GraphOption,
    codomain: CodomainOption,
    colouring: Annotated[
        Path,
        typer.Option("--colouring", help="a colouring G -> D_u(N) as vertex indices (.hom)."),
    ],
    out: OutOption = None,
) -> None:
    """The hom M(G) -> N of a colouring, ``tau(uv) = phi(u) + phi(v)``."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        tau = service.tutte_tau(graph_path=graph, matroid_path=codomain, colouring_path=colouring)
        emit(service, format_hom(tau), out)


@kempe_app.command("decide")
def kempe_decide(
    ctx: typer.Context,
    graph: GraphOption,
    codomain: CodomainOption,
    start: Annotated[Path, typer.Option("--from", help="the first colouring (.hom).")],
    end: Annotated[Path, typer.Option("--to", help="the second colouring (.hom).")],
    out: OutOption = None,
) -> None:
    """Decide Kempe equivalence, printing a shortest sequence of moves."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        found = service.kempe_decide(
            graph_path=graph,
            matroid_path=codomain,
            from_path=start,
            to_path=end,
        )
        if found is not None:
            emit(service, format_kempe_path(found), out)
    if found is None:
        answer(False)


@kempe_app.command("neighbors")
def kempe_neighbors(
    ctx: typer.Context,
    graph: GraphOption,
    codomain: CodomainOption,
    colouring: Annotated[Path, typer.Option("--colouring", help="the colouring (.hom).")],
    out: OutOption = None,
) -> None:
    """Colourings one Kempe move away."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        found = service.kempe_neighbors(
            graph_path=graph,
            matroid_path=codomain,
            colouring_path=colouring,
        )
        emit(service, format_homs(found), out)


@kempe_app.command("graph")
def kempe_graph(
    ctx: typer.Context,
    graph: GraphOption,
    codomain: CodomainOption,
    kempe: Annotated[
        bool,
        typer.Option("--kempe/--single", help="Kempe moves (kCol) or single vertices (gCol)."),
    ] = True,
    dot: Annotated[
        Path | None,
        typer.Option("--dot", help="export the colouring graph as DOT at this path."),
    ] = None,
    out: OutOption = None,
) -> None:
    """Components of kCol(G, D_u(N)) or gCol(G, D_u(N))."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        found = service.kempe_graph(graph_path=graph, matroid_path=codomain, kempe=kempe)
        emit(service, format_colouring_components(found), out)
        if dot is not None:
            service.export_dot(found, destination_path=dot)


@app.command()
def dismantle(
    ctx: typer.Context,
    codomain: CodomainOption,
    target: Annotated[
        Path | None,
        typer.Option("--target", help="the matroid to dismantle to; default loop or edge."),
    ] = None,
    loops: LoopsOption = False,
) -> None:
    """Search for a sequence of dismantling retractions."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        found = service.dismantle(matroid_path=codomain, target_path=target, allow_loops=loops)
    if found is None:
        answer(False)
        return
    if isinstance(found, TrivialityCertificate):
        typer.echo(f"YES: dismantles to the {found.target}")
        sequence = list(found.retractions)
    else:
        typer.echo("YES")
        sequence = found
    if sequence:
        typer.echo(format_homs(sequence), nl=False)


@gadget_app.command("build")
def gadget_build(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    size: SizeOption = None,
    out: OutOption = None,
) -> None:
    """Construct M*; with --out the point map goes to a .map file next to it."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        g = service.gadget_build(
            source_path=domain,
            target_path=codomain,
            n=size,
            destination_path=out,
        )
        if out is None:
            typer.echo(format_matroid(g.matroid), nl=False)
            typer.echo(format_gadget_map(g), nl=False)


@gadget_app.command("lift")
def gadget_lift(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    hom: Annotated[Path, typer.Option("--hom", help="a hom M -> M(K_4) (.hom).")],
    size: SizeOption = None,
    out: OutOption = None,
) -> None:
    """Lift a hom of M into M(K_4) to a hom of M* into N."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        lifted = service.gadget_lift(source_path=domain, target_path=codomain, hom_path=hom, n=size)
        emit(service, format_hom(lifted), out)


@gadget_app.command("verify")
def gadget_verify(
    ctx: typer.Context,
    domain: DomainOption,
    codomain: CodomainOption,
    size: SizeOption = None,
) -> None:
    """Check that lifting preserves and reflects connectivity on this instance."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        report = service.gadget_verify(source_path=domain, target_path=codomain, n=size)
    typer.echo(format_reduction_report(report), nl=False)
    if not report.ok:
        raise typer.Exit(code=ExitCode.NO)


@app.command()
def verify(
    ctx: typer.Context,
    json: Annotated[bool, typer.Option("--json", help="print the report as JSON.")] = False,
    out: OutOption = None,
) -> None:
    """Run the verification suite of worked examples and exhaustive properties."""
    service: ReconfigurationService = ctx.obj
    with exit_codes():
        report = service.verify()
        text = report.model_dump_json(indent=2) if json else report.to_text()
        emit(service, text + "\n", out)
    if not report.passed:
        raise typer.Exit(code=ExitCode.NO)


if __name__ == "__main__":
    app()
