class FlatLieError(Exception):
    """Base class for every error raised by flatlie."""


class ShapeError(FlatLieError, ValueError):
    pass


class DegenerateFormError(FlatLieError, ValueError):
    pass


class JacobiError(FlatLieError, ValueError):
    """Bracket data violates the Jacobi identity.

    ``triple`` holds the first offending basis triple ``(i, j, k)``.
    """

    def __init__(self, message: str, triple: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.triple = triple


class NotFlatError(FlatLieError, ValueError):
    pass


class PreconditionError(FlatLieError, ValueError):
    """Input is well formed but outside the domain of an operation."""


class InadmissibleError(FlatLieError, ValueError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ConstraintError(FlatLieError, ValueError):
    """Parameters violate the constraints of a family or catalog entry."""


class SchemaError(FlatLieError, ValueError):
    """JSON payload does not match the expected schema."""
