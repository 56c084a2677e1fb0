"""Exception hierarchy shared by all modules."""


class InvariantForgeError(Exception):
    """Base class for every error raised by this package."""


class InvalidFieldError(InvariantForgeError, ValueError):
    """A field description is malformed (e.g. non-prime characteristic)."""


class FieldMismatchError(InvariantForgeError, ValueError):
    """Operands live over different fields."""


class PreconditionError(InvariantForgeError, ValueError):
    """An operation was called with inputs violating its precondition."""


class NotLinearlyReductiveError(InvariantForgeError):
    """A Reynolds average was requested where the group order is not invertible."""


class InvalidProductError(InvariantForgeError, ValueError):
    """The diagonal and permutation parts of a product action do not commute."""


class CapExceededError(InvariantForgeError):
    """A resource cap (variables, degree, monomial-space size) was exceeded."""


class ActionFileError(InvariantForgeError, ValueError):
    """Validation failure in an action or corpus file.

    ``pointer`` is a JSON pointer (RFC 6901) to the offending field.
    """

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or ""
        self.message = message


class InapplicableError(InvariantForgeError):
    """The requested method does not apply to this kind of action."""
