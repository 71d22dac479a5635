class ValidationError(ValueError):
    """Input violates a documented precondition."""


class DegenerateSystemError(ValueError):
    """The requested reduced form does not exist for these parameters."""
