"""Exception types raised across the package.

Every error derives from :class:`BlocksmithError` so callers (the CLI in
particular) can map them to exit codes without catching unrelated failures.
"""


class BlocksmithError(Exception):
    """Base class for all package errors."""


class NonPrimeCharacteristic(BlocksmithError, ValueError):
    pass


class OrderTooLarge(BlocksmithError, ValueError):
    pass


class DivisionByZero(BlocksmithError, ZeroDivisionError):
    pass


class EvenModulus(BlocksmithError, ValueError):
    pass


class NonResidue(BlocksmithError, ValueError):
    pass


class SpaceTooLarge(BlocksmithError, ValueError):
    pass


class IdenticalPoints(BlocksmithError, ValueError):
    pass


class EmptySet(BlocksmithError, ValueError):
    pass


class BudgetExceeded(BlocksmithError, ValueError):
    pass


class TooFewPoints(BlocksmithError, ValueError):
    pass


class DimensionMismatch(BlocksmithError, ValueError):
    pass


class DegenerateCode(BlocksmithError, ValueError):
    pass


class DomainError(BlocksmithError, ValueError):
    pass


class BadResidueClass(BlocksmithError, ValueError):
    pass


class GroupTooLarge(BlocksmithError, ValueError):
    pass


class ParityError(BlocksmithError, ValueError):
    pass


class TooLarge(BlocksmithError, ValueError):
    pass


class NotRegular(BlocksmithError, ValueError):
    pass


class DegenerateSpectrum(BlocksmithError, ValueError):
    pass


class BudgetExhausted(BlocksmithError, RuntimeError):
    pass


class RepeatedPoint(BlocksmithError, ValueError):
    pass


class IntegrityHypothesisUnmet(BlocksmithError, ValueError):
    pass


class HypothesisUnmet(BlocksmithError, ValueError):
    pass


class NotCollinear(BlocksmithError, ValueError):
    pass


class NotDistinct(BlocksmithError, ValueError):
    pass


class AvoidanceNotCertified(BlocksmithError, ValueError):
    pass


class ConstraintViolated(BlocksmithError, ValueError):
    pass


class NoAdmissibleD(BlocksmithError, ValueError):
    pass


class CertificateError(BlocksmithError, AssertionError):
    """A verification result contradicts a theorem the construction relies on."""
