"""Exception taxonomy.

Two families matter to callers (and to the CLI exit codes): input that could
not be read at all (``InputError``), and well-formed input that violates a
mathematical precondition (``PreconditionError``).
"""


class ToricApolarError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToricApolarError, ValueError):
    """Malformed input: syntax, schema or homogeneity problems."""


class FormSyntaxError(InputError):
    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class InhomogeneousError(InputError):
    """A polynomial mixes monomials of different multidegrees."""

    def __init__(self, first, second, message=None):
        self.monomials = (first, second)
        super().__init__(message or f"inhomogeneous form: monomials {first} and {second} "
                                    "have different multidegrees")


class SchemaError(InputError):
    pass


class PreconditionError(ToricApolarError, ValueError):
    """Input is well formed but outside the domain of the requested operation."""


class DimensionError(PreconditionError):
    pass


class RingMismatchError(PreconditionError):
    pass


class DegenerateInputError(PreconditionError):
    pass


class DegreeError(PreconditionError):
    pass


class OrderError(PreconditionError):
    """The multidegree of the operator is not below the multidegree of the form."""


class ShapeError(PreconditionError):
    pass


class SymmetryError(PreconditionError):
    pass


class SingularCatalecticantError(PreconditionError):
    pass


class UnsupportedAmbientError(PreconditionError):
    pass


class NotPSDError(PreconditionError):
    def __init__(self, message, signature=None):
        self.signature = signature
        super().__init__(message)


class EmptyStatisticsError(PreconditionError):
    pass
