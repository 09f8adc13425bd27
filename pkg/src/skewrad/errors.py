"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for all errors raised by this package.

    Subclasses carry witness data (the offending generator indices,
    elements, and so on) as attributes so callers can report them.
    """

    def __init__(self, message: str, **witness):
        super().__init__(message)
        self.witness = witness
        for key, value in witness.items():
            setattr(self, key, value)


class ShapeError(AlgebraError):
    pass


class AssociativityViolation(AlgebraError):
    pass


class OrderIncompatibility(AlgebraError):
    pass


class DimensionMismatch(AlgebraError):
    pass


class SizeCapExceeded(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class LeibnizViolation(AlgebraError):
    pass


class OrderViolation(AlgebraError):
    pass


class ContextMismatch(AlgebraError):
    pass


class NotNilpotent(AlgebraError):
    pass


class SearchCapExceeded(AlgebraError):
    pass


class ArityMismatch(AlgebraError):
    pass


class PreconditionFailed(AlgebraError):
    pass


class InternalInconsistency(AlgebraError):
    """Raised when a fact that must hold for finite rings fails; always a bug."""


class NotInS(AlgebraError):
    pass


class QuasiInverseFailure(AlgebraError):
    pass


class CertificateFailure(AlgebraError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})", line=line, column=column)
        self.message = message
