"""Exception types shared across the package."""


class DomainError(ArithmeticError):
    """Argument outside the domain of an operation (ln 0, exact division by zero, ...)."""


class NonFinite(ArithmeticError):
    """A hardware-precision value overflowed or became NaN."""


class ValuationError(ArithmeticError):
    """A series quotient or composition would not be a power series."""


class StepBreakdown(ArithmeticError):
    """An iteration step hit a zero or non-finite denominator.

    ``stage`` names the sub-step that failed (``"y"``, ``"z"``, ``"x"``, ...).
    """

    def __init__(self, stage, detail=""):
        self.stage = stage
        self.detail = detail
        msg = f"step breakdown in sub-step {stage!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DegenerateTrace(ArithmeticError):
    """A convergence-order estimate needs a log of zero."""


class OrderViolation(AssertionError):
    """Raised when an error-series coefficient contradicts the claimed order."""

    def __init__(self, method, k, model, coefficient):
        self.method = method
        self.k = k
        self.model = model
        self.coefficient = coefficient
        super().__init__(
            f"{method}: coefficient of e^{k} is {coefficient} for model {model}"
        )
