"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class UnreliableGridError(DomainError):
    """Too many grid points had to be discarded to trust a verdict."""


class NumericalInconsistencyError(ArithmeticError):
    """Two formulations of the same quantity disagree beyond tolerance."""
