"""Exception types raised across the package."""


class RLNCError(Exception):
    """Base class for all package errors."""


class NotPrime(RLNCError, ValueError):
    pass


class ReduciblePolynomial(RLNCError, ValueError):
    pass


class NoDefaultModulus(RLNCError, ValueError):
    pass


class NotPrimePower(RLNCError, ValueError):
    pass


class DivisionByZero(RLNCError, ZeroDivisionError):
    pass


class InvalidRange(RLNCError, ValueError):
    pass


class ReceivedExceedsTransmitted(RLNCError, ValueError):
    pass


class TooLarge(RLNCError, ValueError):
    """Raised when an exhaustive enumeration would exceed its size guard."""
