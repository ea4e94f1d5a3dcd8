"""Exception hierarchy.

Everything raised on purpose by this package derives from
:class:`KinematicsError`, so callers can catch one type.  Domain errors
always name the violated inequality in their message; the CLI relies on
that when reporting exit code 2.
"""


class KinematicsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KinematicsError, ValueError):
    """An input lies outside the positivity domain of the operation."""


class SingularInversionError(DomainError):
    """Reciprocal velocity requested where its cubic denominator vanishes."""


class DegenerateDenominatorError(DomainError):
    """Velocity composition requested where its denominator degenerates."""


class UnknownIdentityError(KinematicsError, KeyError):
    """An identity id that is not registered with the oracle."""
