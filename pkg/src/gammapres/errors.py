"""Exception types shared across the package."""


class GammapresError(Exception):
    """Base class; the CLI maps it to exit status 1."""


class CapacityError(GammapresError):
    """An input exceeds a configured size cap (CLI exit status 3)."""


class NotNormal(GammapresError):
    pass


class PreconditionError(GammapresError):
    pass


class NonIntegralMultiplicity(GammapresError):
    pass


class BudgetExceeded(CapacityError):
    pass


class NegativeMultiplicity(UserWarning):
    pass
