"""Exception hierarchy shared across the package.

Three families matter to callers (and to the CLI exit-code contract):
input errors, math-domain errors, and precision failures.
"""


class LarmourError(Exception):
    """Base class for all package errors."""


class InputError(LarmourError):
    """Malformed user input (parse errors, schema violations)."""


class MathDomainError(LarmourError):
    """Structurally valid input outside an operation's mathematical domain."""


class PrecisionFailure(LarmourError):
    """A result could not be certified within the working precision."""


class ParseError(InputError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


class DivisionByZero(MathDomainError):
    pass


class FieldMismatch(MathDomainError):
    pass


class MagnitudeExceeded(MathDomainError):
    """Rationals mode exceeded its configured numerator/denominator bound."""


class ZeroInput(MathDomainError):
    pass


class UnsupportedField(MathDomainError):
    pass


class EntryNotFixed(MathDomainError):
    pass


class NegativeValuation(MathDomainError):
    pass


class NotASquare(MathDomainError):
    pass


class PrecisionExhausted(PrecisionFailure):
    pass


class SplitAlgebra(MathDomainError):
    """The requested quaternion algebra is not a division algebra."""


class UndecidableDivision(MathDomainError):
    """Division cannot be certified (no isotropy oracle for this residue field)."""


class NotSkew(MathDomainError):
    pass


class UnitComplementContradiction(MathDomainError):
    """Internal inconsistency: a ramified algebra produced a unit complement."""


class EvenS(MathDomainError):
    """A symmetric uniformizer was requested in a case with even s."""


class NotEpsilonSymmetric(MathDomainError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"entry {index} is not epsilon-symmetric")


class ZeroEntry(MathDomainError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"entry {index} is zero")


class ValueParityImpossible(MathDomainError):
    """Internal inconsistency: an entry value with impossible parity for this case."""


class ResidueConditionFails(MathDomainError):
    pass


class NonUnit(MathDomainError):
    pass


class UnsupportedRamification(MathDomainError):
    pass


class RamifiedPartForbidden(MathDomainError):
    pass


class StructureMismatch(MathDomainError):
    pass
