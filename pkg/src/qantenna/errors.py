"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument is outside the domain an operation accepts."""


class ParseError(ValueError):
    """A site or instance file could not be decoded; the message names the record."""


class ResourceLimitError(RuntimeError):
    """A requested problem size exceeds the configured memory/time cap."""


class DegenerateInstanceError(ValueError):
    """The instance has a zero minimum cost, so cost ratios are undefined."""


class NotFoundError(KeyError):
    """A referenced run id or file does not exist."""
