"""Exception hierarchy.

Input-level problems (bad documents, invalid complexes, unknown names) derive
from InvalidInput and map to CLI exit code 1.  InternalError marks violated
internal invariants (exit code 2); if one of these fires it is a bug, not a
user mistake.
"""


class Emb2Error(Exception):
    pass


class InvalidInput(Emb2Error):
    pass


class InputSyntaxError(InvalidInput):
    pass


class SchemaVersionUnsupported(InvalidInput):
    pass


class InvalidSurface(InvalidInput):
    """Raised when a triangle list fails validation; carries the report."""

    def __init__(self, report):
        self.report = report
        lines = ", ".join(f"{c}:{s}" for c, s in report.failures)
        super().__init__(f"invalid surface: {lines}")


class InvalidSubcomplex(InvalidInput):
    pass


class NotClosedUnderFaces(InvalidSubcomplex):
    pass


class NotConnected(InvalidSubcomplex):
    pass


class EmptySubcomplex(InvalidSubcomplex):
    pass


class UnknownSimplex(InvalidSubcomplex):
    pass


class SubcomplexMeetsBoundary(InvalidSubcomplex):
    """The subcomplex touches the (deleted) boundary of the host surface."""


class XIsWholeSurface(InvalidInput):
    pass


class NotAClosedPath(InvalidInput):
    pass


class NotEmbeddedCircle(InvalidInput):
    pass


class OrientableInput(InvalidInput):
    """Orientation double cover requested for an orientable surface (the
    total space would be two disjoint copies of the input)."""


class NotClosed(InvalidInput):
    pass


class UnknownGenerator(InvalidInput):
    pass


class UnknownExample(InvalidInput):
    pass


class InternalError(Emb2Error):
    pass


class CollapseFailed(InternalError):
    pass


class TrivialGeneratorPresent(InternalError):
    pass
