"""Exception hierarchy shared by every module."""


class CtrustError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CtrustError, ValueError):
    """Input data violates a structural invariant."""


class DimensionMismatch(ValidationError):
    pass


class EmptyScenario(ValidationError):
    pass


class AttributeOutOfRange(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class InvalidRange(ValidationError):
    pass


class IndexOutOfRange(CtrustError, IndexError):
    pass


class TooLarge(CtrustError):
    """Requested diagram exceeds the node arena guard."""


class UnsupportedRule(CtrustError):
    pass


class AssignmentTooShort(CtrustError, ValueError):
    pass


class UndefinedRatio(CtrustError, ZeroDivisionError):
    pass


class EmptyResults(CtrustError, ValueError):
    pass
