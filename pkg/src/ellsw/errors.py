"""Exception types shared across the package."""


class ConstraintError(ValueError):
    """A parameter violates a validity constraint (bad family parameters etc.)."""


class InputDocumentError(ValueError):
    """A user-supplied document (audit file, catalog record) is malformed."""


class InternalInvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class NotRationalError(ValueError):
    """A cyclotomic value expected to be rational is not."""

    def __init__(self, value):
        self.value = value
        super().__init__(f"value is not rational: {value!r}")


class CharacterConflictError(ValueError):
    """Generator assignments cannot extend to a character; carries a witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""
