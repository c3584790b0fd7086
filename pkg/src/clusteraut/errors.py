"""Exception types raised by the engine.

Every failure mode of the public API maps to one of these classes; plain
ValueError/TypeError are reserved for programmer errors (bad argument types,
malformed constructor input).
"""


class EngineError(Exception):
    """Base class for all engine errors."""


class RingMismatch(EngineError):
    """Operands live in incompatible coefficient rings."""


class NegativePower(EngineError):
    """Polynomial power with a negative exponent."""


class DivisionByZero(EngineError):
    """Exact division by the zero polynomial."""


class NotDivisible(EngineError):
    """No exact quotient exists."""


class NegativeExponent(EngineError):
    """Operation requires nonnegative exponents."""


class ZeroPolynomial(EngineError):
    """Operation undefined for the zero polynomial."""


class BudgetExceeded(EngineError):
    """A term-count or work budget was exhausted."""


class LaurentViolation(EngineError):
    """Cluster recurrence produced a non-exact division (should never happen)."""


class SwapRequiresEqualParams(EngineError):
    """The coordinate-reversal map exists only when a == b."""


class ParamsMismatch(EngineError):
    """Maps or elements constructed for different (a, b) were combined."""


class StructureMismatch(EngineError):
    """Group elements belong to different group structures."""


class FactorizationFailed(EngineError):
    """Descent found no factorization within the configured cap."""


class ConjugationNotScaling(EngineError):
    """A conjugate of a diagonal scaling failed to match any scaling."""


class NotFiniteType(EngineError):
    """Enumeration requested for an infinite automorphism group."""


class ModelUnavailable(EngineError):
    """Requested compactification model needs unmet parameter conditions."""


class NotMinusOne(EngineError):
    """Contraction requires a (-1)-curve."""


class PivotNotZero(EngineError):
    """Elementary move requires a 0-curve pivot."""


class PreconditionViolated(EngineError):
    """Cycle shape does not match the operation's required pattern."""


class NotAnticanonical(EngineError):
    """Boundary cycle is not an anticanonical divisor."""


class NotStandardSquare(EngineError):
    """Type is not a standard square (0, 0, -a, -b)."""


class ParseError(EngineError):
    """Input text does not match the grammar."""

    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
