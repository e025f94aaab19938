"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Cotangent evaluated at a multiple of pi."""


class PreconditionError(ValueError):
    """Caller broke a documented precondition (e.g. coprimality)."""


class IntegrityError(ArithmeticError):
    """Two independent evaluation paths disagree beyond tolerance."""
