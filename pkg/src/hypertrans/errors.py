"""Exception hierarchy shared by all hypertrans modules."""

from __future__ import annotations


class HypertransError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HypertransError, ValueError):
    """Raised when an input line cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class EmptyHypergraphError(HypertransError, ValueError):
    """Raised when an input contains no usable hyperedge."""


class InvalidWedgeError(HypertransError, ValueError):
    """Raised when a pair of hyperedges is not a hyperwedge."""


class EmptyCandidateSetError(HypertransError, ValueError):
    """Raised when a measure is evaluated with an empty candidate set."""


class InvalidInstanceError(HypertransError, ValueError):
    """Raised when an axiom instance does not satisfy the axiom's hypothesis."""


class InfeasibleParametersError(HypertransError, ValueError):
    """Raised when generator parameters cannot be satisfied."""
