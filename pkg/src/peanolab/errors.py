"""Exceptions shared across modules."""


class PreconditionError(Exception):
    """An operation was called outside its stated domain."""


class ResourceLimitError(Exception):
    """A guarded computation would exceed its configured size bound."""


class UnboundVariableError(Exception):
    """Term evaluation met a variable the assignment does not cover."""


class MalformedCodeError(Exception):
    """A natural number does not decode under the claimed scheme."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at symbol position {position})"
        super().__init__(message)
        self.position = position
