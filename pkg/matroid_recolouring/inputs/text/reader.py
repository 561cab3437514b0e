"""Readers for the line-oriented text formats.

``.bm``     one column bitstring per line, leftmost character is row 0.
``.edges``  one ``u v`` pair per line; an optional ``# vertices: N`` comment fixes the order.
``.hom``    one line of codomain point indices; colourings use the same layout.

Blank lines and lines starting with ``#`` are ignored everywhere.
"""
from collections.abc import Iterator
from pathlib import Path

import structlog

from matroid_recolouring.constants import COMMENT_PREFIX, VERTICES_HINT
from matroid_recolouring.core.gf2core import BitVec
from matroid_recolouring.core.graphs import GraphColouring, SimpleGraph, is_graph_hom
from matroid_recolouring.core.hom import MatroidHom, is_homomorphism
from matroid_recolouring.core.matroid import BinaryMatroid, from_columns
from matroid_recolouring.errors import DimensionError, FormatError
from matroid_recolouring.models.reader import ReaderInterface

logger = structlog.getLogger()


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith(COMMENT_PREFIX):
            yield number, line


def _vertices_hint(text: str, path: str) -> int | None:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line.startswith(COMMENT_PREFIX):
            continue
        body = line.lstrip(COMMENT_PREFIX).strip()
        if body.startswith(VERTICES_HINT):
            value = body[len(VERTICES_HINT) :].strip()
            if not value.isdigit():
                raise FormatError(f"bad vertex count {value!r}", path=path, line=number)
            return int(value)
    return None


def _parse_indices(line: str, number: int, path: str) -> tuple[int, ...]:
    try:
        values = tuple(int(token) for token in line.split())
    except ValueError:
        raise FormatError(f"expected integers, got {line!r}", path=path, line=number) from None
    if any(v < 0 for v in values):
        raise FormatError(f"negative index in {line!r}", path=path, line=number)
    return values


class TextReader(ReaderInterface):
    """Parses the text formats, either from strings or from files."""

    @staticmethod
    def parse_matroid(
        text: str,
        *,
        allow_loops: bool = False,
        path: str = "<text>",
    ) -> BinaryMatroid:
        """Columns in file order; duplicates and unflagged zero columns are rejected."""
        columns: list[BitVec] = []
        seen: dict[BitVec, int] = {}
        for number, line in _content_lines(text):
            try:
                column = BitVec.from_str(line)
            except DimensionError as exc:
                raise FormatError(str(exc), path=path, line=number) from exc
            if columns and column.length != columns[0].length:
                raise FormatError(
                    f"column of length {column.length}, expected {columns[0].length}",
                    path=path,
                    line=number,
                )
            if column in seen:
                raise FormatError(
                    f"column {column} repeats line {seen[column]}",
                    path=path,
                    line=number,
                )
            if not column and not allow_loops:
                raise FormatError("zero column without allow_loops", path=path, line=number)
            seen[column] = number
            columns.append(column)
        if not columns:
            raise FormatError("no columns", path=path, line=1)
        return from_columns(columns, allow_loops=allow_loops)

    @staticmethod
    def parse_graph(text: str, *, path: str = "<text>") -> SimpleGraph:
        """Edges in file order; the vertex count is the hint or one more than the largest id."""
        edges: list[tuple[int, int]] = []
        for number, line in _content_lines(text):
            pair = _parse_indices(line, number, path)
            if len(pair) != 2:
                raise FormatError(f"expected 'u v', got {line!r}", path=path, line=number)
            if pair[0] == pair[1]:
                raise FormatError(f"self-loop at {pair[0]}", path=path, line=number)
            edges.append((pair[0], pair[1]))
        largest = max((max(e) for e in edges), default=-1)
        hint = _vertices_hint(text, path)
        if hint is not None and hint <= largest:
            raise FormatError(
                f"vertex {largest} exceeds the declared count {hint}",
                path=path,
                line=1,
            )
        return SimpleGraph(hint if hint is not None else largest + 1, edges)

    @staticmethod
    def parse_image(text: str, *, path: str = "<text>") -> tuple[int, ...]:
        """The single image line of a map file."""
        lines = list(_content_lines(text))
        if len(lines) != 1:
            raise FormatError(f"expected one image line, found {len(lines)}", path=path, line=1)
        number, line = lines[0]
        return _parse_indices(line, number, path)

    @staticmethod
    def parse_images(text: str, *, path: str = "<text>") -> list[tuple[int, ...]]:
        """Every image line of a path file, in order."""
        images = [_parse_indices(line, number, path) for number, line in _content_lines(text)]
        if not images:
            raise FormatError("no image lines", path=path, line=1)
        return images

    @staticmethod
    def _matroid_hom(
        image: tuple[int, ...],
        domain: BinaryMatroid,
        codomain: BinaryMatroid,
        path: str,
    ) -> MatroidHom:
        if len(image) != domain.size or any(j >= codomain.size for j in image):
            raise FormatError(
                f"image of {len(image)} indices does not fit "
                f"{domain.size} -> {codomain.size} points",
                path=path,
                line=1,
            )
        if not is_homomorphism(domain, codomain, image):
            raise FormatError(f"{list(image)} is not a matroid homomorphism", path=path, line=1)
        return MatroidHom(domain, codomain, image, check=False)

    def parse_hom(
        self,
        text: str,
        *,
        domain: BinaryMatroid,
        codomain: BinaryMatroid,
        path: str = "<text>",
    ) -> MatroidHom:
        """A validated homomorphism."""
        return self._matroid_hom(self.parse_image(text, path=path), domain, codomain, path)

    def parse_colouring(
        self,
        text: str,
        *,
        source: SimpleGraph,
        target: SimpleGraph,
        path: str = "<text>",
    ) -> GraphColouring:
        """A validated graph homomorphism."""
        image = self.parse_image(text, path=path)
        if not is_graph_hom(source, target, image):
            raise FormatError(f"{list(image)} is not a graph homomorphism", path=path, line=1)
        return GraphColouring(source, target, image)

    def read_matroid(self, *, path: Path, allow_loops: bool = False) -> BinaryMatroid:
        """Load a ``.bm`` file."""
        matroid = self.parse_matroid(path.read_text(), allow_loops=allow_loops, path=str(path))
        logger.debug(event="Read matroid", path=path, points=matroid.size, rank=matroid.rank)
        return matroid

    def read_graph(self, *, path: Path) -> SimpleGraph:
        """Load a ``.edges`` file."""
        graph = self.parse_graph(path.read_text(), path=str(path))
        logger.debug(event="Read graph", path=path, vertices=graph.n, edges=len(graph.edges))
        return graph

    def read_image(self, *, path: Path) -> tuple[int, ...]:
        """Load a map file without validating it."""
        return self.parse_image(path.read_text(), path=str(path))

    def read_hom(self, *, path: Path, domain: BinaryMatroid, codomain: BinaryMatroid) -> MatroidHom:
        """Load a ``.hom`` file."""
        return self.parse_hom(path.read_text(), domain=domain, codomain=codomain, path=str(path))

    def read_homs(
        self,
        *,
        path: Path,
        domain: BinaryMatroid,
        codomain: BinaryMatroid,
    ) -> list[MatroidHom]:
        """Load the homs of a path file."""
        images = self.parse_images(path.read_text(), path=str(path))
        return [self._matroid_hom(image, domain, codomain, str(path)) for image in images]

    def read_colouring(
        self,
        *,
        path: Path,
        source: SimpleGraph,
        target: SimpleGraph,
    ) -> GraphColouring:
        """Load a colouring stored as an image array."""
        return self.parse_colouring(path.read_text(), source=source, target=target, path=str(path))
