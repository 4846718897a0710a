"""
Exception hierarchy for seymour_verifier.

Every error raised on purpose by the package derives from SeymourError, so
callers (the CLI in particular) can separate "bad input" from "a bug".
"""


class SeymourError(Exception):
    """Base class for all package errors."""


class PreconditionError(SeymourError, ValueError):
    """An operation was called outside its documented precondition."""


class EndpointRootError(PreconditionError):
    """A Sturm count was requested on an interval whose endpoint is a root."""


class EmptyNeighborhoodError(PreconditionError):
    """The first out-neighborhood of the chosen vertex is empty."""


class ZeroOutDegreeError(PreconditionError):
    """The digraph has a vertex of out-degree zero."""


class DigraphError(SeymourError, ValueError):
    """An arc set violates the oriented-digraph invariants."""


class EdgeListError(DigraphError):
    """An edge-list file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PartitionError(SeymourError):
    """The cell counts around an arc break the x31 = 0 invariant."""


class AssignmentFileError(SeymourError, ValueError):
    """A JSON assignment file is malformed."""


class AdjustmentError(SeymourError):
    """An adjustment step broke a constraint it is guaranteed to preserve."""

    def __init__(self, step, message):
        self.step = step
        super().__init__(f"adjust step {step}: {message}")


class NoSignChangeError(SeymourError):
    """The maximum of F has the same sign at both ends of a bracket."""


class CertificateError(SeymourError):
    """A sign condition on the certificate constants does not hold."""
