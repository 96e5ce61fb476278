"""Exception hierarchy shared by the exact layer, the pipeline and the CLI."""


class ToralKmsError(Exception):
    """Base class for all errors raised by toral-kms."""


class ValidationFailure(ToralKmsError):
    """Input was malformed or a verification step rejected it.

    Args:
        message: Human readable description of the failure
        location: Optional source location (file name and key path)
    """

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class DependentUnitsError(ValidationFailure):
    """Candidate units satisfy a multiplicative relation modulo torsion."""

    def __init__(self, message: str, relation: tuple[int, ...]):
        self.relation = relation
        super().__init__(f"{message}: relation {list(relation)}")


class UndeterminedError(ToralKmsError):
    """A decision could not be certified within the precision or search budget."""


class InternalConsistencyError(ToralKmsError):
    """Two independent computations disagree. Only a bug can trigger this."""
