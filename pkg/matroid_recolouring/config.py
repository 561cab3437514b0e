import logging
import os
import sys

import structlog
from pydantic import BaseModel, Field

from matroid_recolouring import constants

# worker threads for dask bags, 1 keeps everything on the synchronous scheduler
THREADS = int(os.environ.get("THREADS", "1"))

LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO").upper()


def default_scheduler() -> str:
    """Dask scheduler matching the THREADS setting."""
    return "threads" if THREADS > 1 else "synchronous"


def configure_logging(level: str = LOG_LEVEL) -> None:
    """Send structured logs to stderr so that stdout only carries command output."""
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(logging.getLevelName(level)),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
    )


class Caps(BaseModel):
    """Resource contract shared by every capped enumeration or search."""

    max_rank: int = Field(default=constants.DEFAULT_MAX_RANK, ge=0)
    max_homs: int = Field(default=constants.DEFAULT_MAX_HOMS, ge=1)
    max_states: int = Field(default=constants.DEFAULT_MAX_STATES, ge=1)
