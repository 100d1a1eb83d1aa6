"""Exception types shared by the whole package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class InvariantError(ValueError):
    """A value object violates one of its defining conditions."""

    def __init__(self, condition, message):
        super().__init__(f"condition {condition} violated: {message}")
        self.condition = condition


class ResourceLimitError(RuntimeError):
    """An enumeration or computation would exceed a configured cap."""


class FuelExhaustedError(ResourceLimitError):
    """The rewrite engine ran out of steps before reaching a normal form."""


class ParseError(ValueError):
    def __init__(self, text, position, message):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(f"{message} at column {position + 1}\n{text}\n{' ' * position}^")
