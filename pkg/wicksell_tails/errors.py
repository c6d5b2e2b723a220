from typing import Optional


class WicksellError(Exception):
    """Base class for every error raised by wicksell_tails."""


class InvalidParameterError(WicksellError, ValueError):
    """A law, grid or estimator parameter is outside its admissible range."""


class DomainError(WicksellError, ValueError):
    """An argument lies outside the domain of the evaluated function."""


class UsageError(WicksellError, ValueError):
    """A command-line or rendering option is not recognised."""


class DivergentMomentError(WicksellError, ArithmeticError):
    """The requested moment of a radius law is infinite."""

    def __init__(self, order: float, message: Optional[str] = None):
        self.order = order
        super().__init__(message or f"moment of order {order} diverges")


class SingularDensityError(WicksellError, ArithmeticError):
    """The section density is infinite at the requested abscissa."""

    def __init__(self, x: float):
        self.x = x
        super().__init__(f"section density is infinite at x={x!r} (atom with r=1)")


class QuadratureError(WicksellError, ArithmeticError):
    """
    Adaptive quadrature produced a non-finite value.

    Attributes:
        abscissa (Optional[float]): The abscissa at which the integral was requested.
    """

    def __init__(self, message: str, abscissa: Optional[float] = None):
        self.abscissa = abscissa
        if abscissa is not None:
            message = f"{message} (at x={abscissa!r})"
        super().__init__(message)


class TabulationError(QuadratureError):
    """A section table could not be built; carries the offending abscissa."""


class InvalidTableError(WicksellError, ValueError):
    """A tabulated section law violates its structural invariants."""


class UnderflowError(WicksellError, ArithmeticError):
    """A CDF value at a probe point is zero or below the representable floor."""

    def __init__(self, s: float, value: float):
        self.s = s
        self.value = value
        super().__init__(f"cdf underflow at s={s!r} (value {value!r})")


class DegenerateThresholdError(WicksellError, ValueError):
    """The order statistics above the threshold carry no log-spacing."""


class ScaleError(WicksellError, ArithmeticError):
    """A normalising scale is zero or negative."""


class ResourceBudgetError(WicksellError, RuntimeError):
    """A simulation would exceed the configured resource budget."""


class UnsupportedCaseError(WicksellError, NotImplementedError):
    """The requested extreme-value case is outside the supported table."""


__all__ = [
    "WicksellError",
    "InvalidParameterError",
    "DomainError",
    "UsageError",
    "DivergentMomentError",
    "SingularDensityError",
    "QuadratureError",
    "TabulationError",
    "InvalidTableError",
    "UnderflowError",
    "DegenerateThresholdError",
    "ScaleError",
    "ResourceBudgetError",
    "UnsupportedCaseError",
]
