"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all package errors."""


class InputError(Error):
    """Malformed or structurally invalid input (bad family/rank, bad fan file, ...)."""


class DomainError(Error):
    """Input is well-formed but violates an operation's precondition."""


class GenericityError(Error):
    """A chosen one-parameter direction pairs to zero with some isotropy weight."""


class PoleError(Error):
    """A localization sum kept an uncancelled pole at q = 1."""

    def __init__(self, message: str, order: int = 0):
        super().__init__(message)
        self.order = order
