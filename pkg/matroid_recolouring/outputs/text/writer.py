"""Renderers for the text formats; everything they emit parses back with ``TextReader``."""
from collections.abc import Sequence

from matroid_recolouring.constants import FORMAT_HEADER, VERTICES_HINT
from matroid_recolouring.core.decision import DecisionGraph
from matroid_recolouring.core.graphs import ColouringGraph, GraphColouring, KempePath, SimpleGraph
from matroid_recolouring.core.hom import MatroidHom
from matroid_recolouring.core.matroid import BinaryMatroid
from matroid_recolouring.core.recolor import RecolouringGraph, RecolPath
from matroid_recolouring.core.reduction import GadgetInstance
from matroid_recolouring.models.reports import ReductionReport


def _document(*lines: str) -> str:
    return "\n".join([FORMAT_HEADER, *lines]) + "\n"


def _image_line(image: Sequence[int]) -> str:
    return " ".join(str(j) for j in image)


def format_matroid(matroid: BinaryMatroid) -> str:
    """``.bm``: one column per line."""
    return _document(
        f"# points: {matroid.size} rank: {matroid.rank}",
        *(str(p) for p in matroid.points),
    )


def format_graph(graph: SimpleGraph) -> str:
    """``.edges`` with the vertex count hint, so isolated vertices survive."""
    return _document(f"# {VERTICES_HINT} {graph.n}", *(f"{u} {v}" for u, v in graph.edges))


def format_hom(tau: MatroidHom | GraphColouring) -> str:
    """``.hom``: the image array on one line."""
    return _document(_image_line(tau.image))


def format_homs(homs: Sequence[MatroidHom]) -> str:
    """One image per line, as printed by ``enum-homs`` and ``components``."""
    return _document(*(_image_line(tau.image) for tau in homs))


def format_path(path: RecolPath) -> str:
    """The homs of a path, each step announced by its witness in a comment."""
    lines = [f"# length: {path.length}", _image_line(path.start.image)]
    for step, tau in zip(path.steps, path.homs[1:]):
        lines.append(f"# step: cocircuit {list(step.cocircuit.indices())} + {step.constant}")
        lines.append(_image_line(tau.image))
    return _document(*lines)


def format_kempe_path(path: KempePath) -> str:
    """The colourings of a Kempe path, each move announced in a comment."""
    lines = [f"# length: {path.length}", _image_line(path.colourings[0].image)]
    for step, phi in zip(path.steps, path.colourings[1:]):
        lines.append(f"# move: {step.b} on {list(step.vertices)} (b' = {step.b_prime})")
        lines.append(_image_line(phi.image))
    return _document(*lines)


def format_gadget_map(g: GadgetInstance) -> str:
    """Sidecar of an exported gadget: ``e e'`` per point of M, then the block range."""
    lines = [f"{e} {g.twin(e)}" for e in range(g.source.size)]
    lines.append(f"# clique block of M(K_{g.n}), end exclusive")
    lines.append(f"block {g.block_start} {g.twin_start}")
    return _document(*lines)


def format_reduction_report(report: ReductionReport) -> str:
    """Human readable summary of a reduction check."""
    cases = ", ".join(f"{k}={v}" for k, v in sorted(report.crossing_cases.items())) or "none"
    return _document(
        f"source points: {report.source_points}",
        f"gadget points: {report.gadget_points} (clique K_{report.clique_size})",
        f"source homs: {report.source_homs}",
        f"pairs checked: {report.pairs_checked}",
        f"mismatches: {len(report.mismatches)}",
        f"lifted edge paths: {report.lifted_edge_paths} ({report.lifted_edge_failures} failed)",
        f"gadget edges: {report.gadget_edges} ({report.automorphisms} automorphisms of N)",
        f"restricted edges: {report.restricted_edges} ({report.restricted_edge_failures} failed)",
        f"constructive paths: {report.constructive_paths}",
        f"searched paths: {report.searched_paths}",
        f"crossing cases: {cases}",
        f"result: {'OK' if report.ok else 'MISMATCH'}",
    )


def format_components(graph: RecolouringGraph) -> str:
    """Components of Col(M, N), each led by its least hom."""
    parts = graph.components()
    lines = [f"# components: {len(parts)}"]
    for k, part in enumerate(parts):
        lines.append(f"# component {k}: {len(part)} homs")
        lines.extend(_image_line(graph.homs[i].image) for i in part)
    return _document(*lines)


def format_decision_summary(decision: DecisionGraph) -> str:
    """Counts and degree sequence, enough to tell small isomorphism classes apart."""
    degrees = decision.graph.degree_sequence()
    return _document(
        f"universal: {'yes' if decision.universal else 'no'}",
        f"vertices: {decision.graph.n}",
        f"edges: {len(decision.graph.edges)}",
        f"degree sequence: {' '.join(str(d) for d in degrees)}",
        f"complete: {'yes' if decision.is_complete() else 'no'}",
    )


def format_colouring_components(graph: ColouringGraph) -> str:
    """Components of gCol or kCol, one colouring per line."""
    parts = graph.components()
    lines = [f"# components: {len(parts)}", f"# edges: {len(graph.edges)}"]
    for k, part in enumerate(parts):
        lines.append(f"# component {k}: {len(part)} colourings")
        lines.extend(_image_line(graph.colourings[i].image) for i in part)
    return _document(*lines)
