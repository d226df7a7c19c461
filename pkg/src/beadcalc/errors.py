"""Exception hierarchy shared by every engine module."""


class BeadcalcError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 2


class ValidationError(BeadcalcError):
    pass


class BadValence(ValidationError):
    pass


class IncompleteCyclicOrder(ValidationError):
    pass


class DuplicateLegLabel(ValidationError):
    pass


class CapExceeded(BeadcalcError):
    exit_code = 3


class DegreeMismatch(ValidationError):
    pass


class NonzeroBeadDegree(ValidationError):
    pass


class NotDivisible(ValidationError):
    pass


class WrongDegree(ValidationError):
    pass


class NotInF3(ValidationError):
    pass


class NotTrivalent(ValidationError):
    pass


class TruncationTooSmall(ValidationError):
    pass
