"""Exception hierarchy shared by every module."""


class ExpmatError(Exception):
    """Base class for library errors."""


class MixedFields(ExpmatError):
    pass


class DivisionByZero(ExpmatError, ZeroDivisionError):
    pass


class NotFiniteField(ExpmatError):
    pass


class NotIrreducible(ExpmatError):
    pass


class WrongCharacteristic(ExpmatError):
    pass


class NotAdditive(ExpmatError):
    pass


class ZeroInput(ExpmatError):
    pass


class DimensionMismatch(ExpmatError):
    pass


class NotNilpotent(ExpmatError):
    pass


class InternalInconsistency(ExpmatError):
    pass


class NonConstantDeterminant(ExpmatError):
    pass


class NotExponential(ExpmatError):
    pass


class BadDerivationShape(ExpmatError):
    pass


class ZeroScalar(ExpmatError):
    pass


class SingularMatrix(ExpmatError):
    pass


class TriangularizationFailed(ExpmatError):
    pass


class NotNormalized(ExpmatError):
    pass


class TooLarge(ExpmatError):
    pass


class NotFound(ExpmatError):
    pass


class Unsupported(ExpmatError):
    pass


class InputError(ExpmatError):
    """Malformed JSON input."""
