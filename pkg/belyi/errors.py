"""
Exceptions raised across the belyi package
Each carries the process exit code the command line should use when it is the worst failure seen
"""


class BelyiError(Exception):
    """
    Base class for every error raised by this package
    """

    exit_code: int = 1


class InvalidField(BelyiError):
    pass


class DivisionByZero(BelyiError):
    pass


class FieldMismatch(BelyiError):
    pass


class PrecisionError(BelyiError):
    """
    Numeric work could not separate roots, clusters or sheets at the working precision
    """

    exit_code = 3


class InvalidInput(BelyiError):
    pass


class DegenerateComposition(BelyiError):
    pass


class SingularCurve(BelyiError):
    pass


class NotBelyi(BelyiError):
    pass


class WrongGenus(BelyiError):
    pass


class DegenerateCover(BelyiError):
    pass


class CurveMismatch(BelyiError):
    pass


class InvalidParams(BelyiError):
    pass


class SampleRejected(BelyiError):
    pass


class SchemaError(BelyiError):
    """
    A catalog file does not match the documented schema
    """

    exit_code = 2


class MissingDependency(BelyiError):
    """
    A catalog entry refers to another entry that cannot be found
    """

    exit_code = 2
