"""Exception hierarchy.

Two families matter to callers: ``InputError`` covers malformed input and IO
(CLI exit code 1), ``MathError`` covers well-formed input that is rejected on
mathematical grounds (CLI exit code 2).
"""


class TorlinkError(Exception):
    pass


class InputError(TorlinkError):
    pass


class MathError(TorlinkError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {col})" if col is not None else ")")
        super().__init__(message + where)


class FieldMismatch(MathError):
    pass


class SingularMatrix(MathError):
    pass


class NotArtinian(MathError):
    pass


class NotHomogeneous(MathError):
    pass


class ContainmentViolation(MathError):
    pass


class NotRegularSequence(MathError):
    pass


class ProperLinkRequired(MathError):
    pass


class DimensionallyInvalid(MathError):
    pass


class InvalidTable(MathError):
    pass


class NormalizationFailed(MathError):
    pass


class Unclassifiable(MathError):
    pass


class RegimeMismatch(MathError):
    pass


class NotNormalized(MathError):
    pass
