from pathlib import Path

import structlog

from matroid_recolouring.constants import FORMAT_HEADER, MIN_VALID_SIZE_BYTES
from matroid_recolouring.models.storage import StorageInterface

logger = structlog.getLogger()


def _size_bytes(path: Path) -> int:
    if path.is_file():
        return path.stat().st_size
    return sum(f.stat().st_size for f in path.rglob("*") if f.is_file())


class LocalClient(StorageInterface):
    """Stores rendered artefacts as UTF-8 files on the local disk."""

    def exists(self, *, path: Path) -> bool:
        return path.exists()

    def is_valid(self, *, path: Path, min_size_bytes: float = MIN_VALID_SIZE_BYTES) -> bool:
        """A file (or folder in total) of at least ``min_size_bytes``."""
        return self.exists(path=path) and _size_bytes(path) >= min_size_bytes

    def store(self, *, text: str, destination_path: Path) -> Path:
        destination_path.parent.mkdir(parents=True, exist_ok=True)
        destination_path.write_text(text, encoding="utf-8")
        logger.debug(
            event="Stored text",
            destination_path=destination_path,
            size_bytes=_size_bytes(destination_path),
            versioned=text.startswith(FORMAT_HEADER),
        )
        return destination_path
