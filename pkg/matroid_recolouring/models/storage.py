from pathlib import Path
from typing import Protocol


class StorageInterface(Protocol):
    """Where rendered matroids, graphs, maps, DOT files and reports end up."""

    def exists(self, *, path: Path) -> bool:
        """Whether anything is stored at ``path``."""
        ...

    def is_valid(self, *, path: Path, min_size_bytes: float) -> bool:
        """Whether ``path`` holds at least ``min_size_bytes`` of data."""
        ...

    def store(self, *, text: str, destination_path: Path) -> Path:
        """Write ``text`` and return where it went."""
        ...
