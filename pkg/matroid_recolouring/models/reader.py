from pathlib import Path
from typing import Protocol

from matroid_recolouring.core.graphs import GraphColouring, SimpleGraph
from matroid_recolouring.core.hom import MatroidHom
from matroid_recolouring.core.matroid import BinaryMatroid


class ReaderInterface(Protocol):
    """Generic interface for loading the inputs of a use case."""

    def read_matroid(self, *, path: Path, allow_loops: bool) -> BinaryMatroid:
        """Load a matroid from its column list."""
        ...

    def read_graph(self, *, path: Path) -> SimpleGraph:
        """Load a graph from its edge list."""
        ...

    def read_image(self, *, path: Path) -> tuple[int, ...]:
        """Load a single image array without validating it."""
        ...

    def read_hom(self, *, path: Path, domain: BinaryMatroid, codomain: BinaryMatroid) -> MatroidHom:
        """Load a single map between two matroids."""
        ...

    def read_homs(
        self,
        *,
        path: Path,
        domain: BinaryMatroid,
        codomain: BinaryMatroid,
    ) -> list[MatroidHom]:
        """Load every map of a path file, in order."""
        ...

    def read_colouring(
        self,
        *,
        path: Path,
        source: SimpleGraph,
        target: SimpleGraph,
    ) -> GraphColouring:
        """Load a graph colouring stored as an image array."""
        ...
