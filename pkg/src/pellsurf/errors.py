"""Exception hierarchy.

Every error carries a short stable ``code`` that the CLI reports verbatim.
"""


class PellSurfError(Exception):
    code = "error"


class FieldMismatchError(PellSurfError, TypeError):
    code = "field-mismatch"


class NotInFieldError(PellSurfError, ValueError):
    code = "not-in-field"


class DivisionByZeroError(PellSurfError, ZeroDivisionError):
    code = "division-by-zero"


class ParseError(PellSurfError, ValueError):
    code = "parse-error"

    def __init__(self, message, text="", pos=None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = "%s at position %d\n  %s\n  %s^" % (message, pos, text, " " * pos)
        super().__init__(message)


class PrecisionError(PellSurfError, ArithmeticError):
    """Raised when an operation would need coefficients beyond the known precision."""

    code = "precision-exhausted"


class PreconditionError(PellSurfError, ValueError):
    code = "precondition"


class OutOfScopeError(PellSurfError, ValueError):
    code = "odd-degree-out-of-scope"


class NonSquareLeadError(PellSurfError, ValueError):
    code = "non-square-leading-coefficient"


class InseparableError(PellSurfError, ValueError):
    code = "inseparable"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateError(PellSurfError, ValueError):
    code = "degenerate"


class DescentShapeError(PellSurfError, ValueError):
    """Input of a p-th power descent is not made of p-th powers."""

    code = "not-pth-power"


class InconsistentStateError(PellSurfError, RuntimeError):
    code = "inconsistent-state"


class SearchSpaceError(PellSurfError, ValueError):
    code = "search-space-too-large"


class ReducibleCurveError(PellSurfError, ValueError):
    code = "reducible-curve"
