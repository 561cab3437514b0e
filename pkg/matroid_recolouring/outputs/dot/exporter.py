"""DOT rendering of decision graphs and recolouring graphs through ``graphviz``."""
from collections.abc import Sequence
from pathlib import Path

import graphviz
import structlog

from matroid_recolouring.core.decision import DecisionGraph
from matroid_recolouring.core.graphs import ColouringGraph
from matroid_recolouring.core.recolor import RecolouringGraph
from matroid_recolouring.models.storage import StorageInterface

logger = structlog.getLogger()

Renderable = DecisionGraph | RecolouringGraph | ColouringGraph


def _image_label(image: Sequence[int]) -> str:
    return "[" + " ".join(str(j) for j in image) + "]"


def _decision_dot(decision: DecisionGraph, name: str) -> graphviz.Graph:
    dot = graphviz.Graph(name=name)
    for v in range(decision.graph.n):
        dot.node(f"v{v}", label=str(decision.vector(v)))
    for u, v in decision.graph.edges:
        dot.edge(f"v{u}", f"v{v}")
    if decision.graph.reflexive:
        for v in range(decision.graph.n):
            dot.edge(f"v{v}", f"v{v}")
    return dot


def _recolouring_dot(graph: RecolouringGraph, name: str) -> graphviz.Graph:
    dot = graphviz.Graph(name=name)
    for i, tau in enumerate(graph.homs):
        dot.node(f"h{i}", label=_image_label(tau.image))
    for (i, j), witness in zip(graph.edges, graph.witnesses):
        dot.edge(f"h{i}", f"h{j}", label=str(witness))
    return dot


def _colouring_dot(graph: ColouringGraph, name: str) -> graphviz.Graph:
    dot = graphviz.Graph(name=name)
    for i, phi in enumerate(graph.colourings):
        dot.node(f"c{i}", label=_image_label(phi.image))
    for (i, j), label in zip(graph.edges, graph.labels):
        dot.edge(f"c{i}", f"c{j}", label=label)
    return dot


def render_dot(graph: Renderable, name: str = "G") -> graphviz.Graph:
    """Nodes in index order, edges in their stored order."""
    match graph:
        case DecisionGraph():
            return _decision_dot(graph, name)
        case RecolouringGraph():
            return _recolouring_dot(graph, name)
        case ColouringGraph():
            return _colouring_dot(graph, name)
        case _:
            raise NotImplementedError(f"{type(graph)=} not implemented yet!")


class DotExporter:
    def __init__(self, *, storer: StorageInterface) -> None:
        self.storer = storer

    def export(self, graph: Renderable, *, destination_path: Path) -> Path:
        """Write the DOT source of ``graph``."""
        dot = render_dot(graph, name=destination_path.stem or "G")
        path = self.storer.store(text=dot.source, destination_path=destination_path)
        logger.debug(event="Exported DOT", kind=type(graph).__name__, destination_path=path)
        return path
