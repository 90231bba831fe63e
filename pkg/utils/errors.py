"""Exception hierarchy shared by the backend engines and the CLI.

Every error the library raises on purpose derives from ``NcpartError`` so the
command-line entry can report it as a one-line message instead of a traceback.
"""

from __future__ import annotations

from typing import Optional, Sequence


class NcpartError(Exception):
    """Base class for all deliberate failures."""


class DomainError(NcpartError, ValueError):
    """An element or argument lies outside the declared group, lattice or range."""


class GuardExceeded(NcpartError):
    """An exhaustive operation was asked for a size above its configured guard."""

    def __init__(self, operation: str, requested: int, limit: int):
        self.operation = operation
        self.requested = requested
        self.limit = limit
        super().__init__(
            f"{operation}: n={requested} exceeds the guard n<={limit} "
            "(raise it with --max-n or NCPART_MAX_N)"
        )


class IncompatiblePrime(NcpartError, ValueError):
    """The requested prime does not keep positive-root bases independent."""

    def __init__(self, cox_type: str, n: int, p: int):
        self.cox_type = cox_type
        self.n = n
        self.p = p
        super().__init__(f"p={p} is not compatible with the root system of type {cox_type}{n}")


class CrossingPartition(DomainError):
    """A partition meant to be non-crossing has two crossing blocks."""

    def __init__(self, first: Sequence[int], second: Sequence[int]):
        self.blocks = (tuple(first), tuple(second))
        super().__init__(f"blocks {set(first)} and {set(second)} cross")


class DegenerateForm(NcpartError, ValueError):
    """A bilinear form has a nontrivial radical over the working field."""


class ParseError(NcpartError, ValueError):
    """A literal could not be parsed; ``position`` points into ``text``."""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


class VerificationError(NcpartError, AssertionError):
    """An internal consistency check failed."""
