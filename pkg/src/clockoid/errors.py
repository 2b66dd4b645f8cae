"""Exception hierarchy for clockoid.

Input problems (bad KDF text, structurally invalid diagrams) raise
subclasses of :class:`DiagramError`.  Violations of combinatorial facts
that are supposed to be impossible for valid inputs raise
:class:`TheoryError` instead of being silently ignored.
"""


class ClockoidError(Exception):
    """Base class for all clockoid errors."""


class KdfSyntaxError(ClockoidError):
    """Malformed KDF text.  Carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DiagramError(ClockoidError):
    """A diagram failed structural validation."""


class ArcMultiplicityError(DiagramError):
    """An arc appears in the wrong number of crossing slots."""


class ThreadingError(DiagramError):
    """Slot data is inconsistent with the arc numbering along components."""


class NonSphericalError(DiagramError):
    """Face tracing did not produce n+1 faces (code is not planar/spherical)."""


class DisconnectedError(DiagramError):
    """The underlying 4-valent map is not connected."""


class StarError(DiagramError):
    """The star placement does not resolve to exactly one region."""


class InvalidStateError(ClockoidError):
    """A marker assignment violates the clock-state invariants."""


class InvalidMoveError(ClockoidError):
    """A clock move was applied to a state it is not legal on."""


class MismatchedDiagramError(ClockoidError):
    """Two objects that must live on the same diagram do not."""


class CapExceededError(ClockoidError):
    """A configured resource cap (state count, matrix size) was exceeded."""


class TheoryError(ClockoidError):
    """A combinatorial invariant guaranteed by the underlying theorems failed.

    This is never raised for malformed input; it indicates either a bug or
    a genuine counterexample, and must not be swallowed.
    """
