"""Exception hierarchy shared across numrad."""


class NumradError(Exception):
    """Base class for every error raised by numrad."""


class NotHermitian(NumradError, ValueError):
    pass


class NoConvergence(NumradError, ArithmeticError):
    pass


class DomainViolation(NumradError, ValueError):
    """Spectrum of an argument falls outside the domain of a scalar function."""


class MatrixFormatError(NumradError, ValueError):
    pass


class UnknownChain(NumradError, KeyError):
    pass


class SignatureMismatch(NumradError, TypeError):
    pass


class PositivityViolation(NumradError, ValueError):
    pass


class NotUnitVector(NumradError, ValueError):
    pass


class IndexOutOfRange(NumradError, IndexError):
    pass
