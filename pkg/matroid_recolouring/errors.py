class RecolouringError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionError(RecolouringError, ValueError):
    """Vectors or matrices with incompatible shapes."""


class CapacityError(RecolouringError):
    """An enumeration or search would exceed its configured cap."""


class SimplicityError(RecolouringError, ValueError):
    """A matroid representation with repeated columns."""


class LoopError(RecolouringError, ValueError):
    """A zero column where loops are not allowed."""


class ArgumentError(RecolouringError, ValueError):
    """An argument outside the domain of an operation."""


class DomainMismatchError(RecolouringError, ValueError):
    """Maps whose domains or codomains do not line up."""


class PreconditionError(RecolouringError, ValueError):
    """An operation's precondition does not hold for the given instance."""


class ConstructionError(RecolouringError):
    """A construction produced an object violating its invariants."""


class InternalError(RecolouringError, AssertionError):
    """A mathematical claim checked at runtime did not hold."""


class FormatError(RecolouringError, ValueError):
    """A text file that does not follow its format."""

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None) -> None:
        location = f"{path}:{line}: " if path is not None and line is not None else ""
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line
