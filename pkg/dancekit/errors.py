"""
DANCEKIT Exceptions

One hierarchy for every failure the package raises on purpose.

- InputError subclasses mean the caller handed us something malformed
  (CLI exit code 2).
- DomainError subclasses mean the input was well formed but the answer is
  negative: the braid closes to a link, the cut set cannot be danced, ...
  (CLI exit code 1).

Version: 1.0.0
"""

from typing import Optional, Sequence, Tuple


class DanceError(Exception):
    """Base exception for dancekit errors."""
    pass


# Input errors ---------------------------------------------------------------

class InputError(DanceError):
    """Raised when input text or parameters are malformed."""
    pass


class DiagramSyntaxError(InputError):
    """Raised when diagram text does not match its grammar."""

    def __init__(self, message: str, token: Optional[str] = None, offset: Optional[int] = None) -> None:
        self.token = token
        self.offset = offset
        if token is not None and offset is not None:
            message = f"{message} (token {token!r} at offset {offset})"
        super().__init__(message)


class RoleMismatch(InputError):
    """Raised when a crossing lacks exactly one Under and one Over passage."""

    def __init__(self, message: str, crossing: Optional[int] = None) -> None:
        self.crossing = crossing
        super().__init__(message)


class MalformedPD(InputError):
    """Raised when a PD code violates the edge-label invariants."""
    pass


class IndexOutOfRange(InputError):
    """Raised when a braid letter index is outside 1..n-1."""
    pass


class BadParameter(InputError):
    """Raised when a numeric parameter is invalid."""
    pass


class InvalidCutSet(InputError):
    """Raised when a cut set does not fit its diagram."""
    pass


class CensusFormatError(InputError):
    """Raised when a census row is malformed and ingestion is strict."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# Domain errors --------------------------------------------------------------

class DomainError(DanceError):
    """Raised when well-formed input has a negative answer."""
    pass


class MultipleComponents(DomainError):
    """Raised when a PD code describes a link rather than a knot."""

    def __init__(self, message: str, components: Optional[int] = None) -> None:
        self.components = components
        super().__init__(message)


class NotAKnot(DomainError):
    """Raised when a braid closure has more than one component."""

    def __init__(self, components: int) -> None:
        self.components = components
        super().__init__(f"braid closure has {components} components, not a knot")


class EmptyDiagram(DomainError):
    """Raised when an operation needs at least one crossing."""
    pass


class InfeasibleCuts(DomainError):
    """Raised when a cut set admits no dance; carries the blame cycle."""

    def __init__(self, cycle: Sequence[Tuple[int, str]]) -> None:
        self.cycle = tuple(cycle)
        rendered = " -> ".join(f"{role}{crossing}" for crossing, role in self.cycle)
        super().__init__(f"cut set is not danceable; precedence cycle: {rendered}")


class UnsupportedLayout(DomainError):
    """Raised when a render format cannot lay out the given diagram."""
    pass
