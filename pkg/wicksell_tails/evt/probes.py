import logging
import math
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..errors import DomainError, InvalidParameterError

logger = logging.getLogger(__name__)

GUMBEL_DECAY_THRESHOLD = 1e-3


class ProbePoint(str, Enum):
    ZERO = "zero"
    INFINITY = "infinity"


DEFAULT_T_LISTS = {
    ProbePoint.ZERO: [10.0**-i for i in range(1, 7)],
    ProbePoint.INFINITY: [10.0**i for i in range(1, 7)],
}


class RvProbe(BaseModel):
    """Regular-variation exponent read off at a sequence of t tending to the probe point."""

    at: ProbePoint
    ratio: float
    sequence: List[Tuple[float, float]]
    rho: float


def rv_exponent_probe(
    func: Callable[[float], float],
    at: ProbePoint = ProbePoint.ZERO,
    t_list: Optional[Sequence[float]] = None,
    ratio: float = 2.0,
) -> RvProbe:
    """
    Estimate rho in R(t x) / R(t) -> x^rho as log[R(t x) / R(t)] / log(x) along t_list.

    Raises:
        DomainError: If R is not positive at a probe point.

    Examples:
        >>> round(rv_exponent_probe(lambda t: t**1.5).rho, 12)
        1.5
    """
    at = ProbePoint(at)
    if not ratio > 1.0:
        raise InvalidParameterError(f"ratio must exceed 1, got {ratio}")
    points = list(t_list) if t_list is not None else DEFAULT_T_LISTS[at]
    if not points:
        raise InvalidParameterError("t_list must not be empty")
    sequence = []
    for t in points:
        low, high = float(func(t)), float(func(t * ratio))
        if not (low > 0.0 and high > 0.0):
            raise DomainError(f"function must be positive on the probe range, got R({t:g})={low:g}")
        sequence.append((float(t), math.log(high / low) / math.log(ratio)))
    return RvProbe(at=at, ratio=ratio, sequence=sequence, rho=sequence[-1][1])


class GumbelDecayResult(BaseModel):
    """
    s^(-n) F(eta + s) for n = 1..n_max at s and, as a secondary check, at s / 10.

    The verdict holds when every primary value is below the threshold and no
    value increases from s to s / 10.
    """

    s: float
    threshold: float = GUMBEL_DECAY_THRESHOLD
    values: List[Tuple[int, float]]
    secondary: List[Tuple[int, float]]
    consistent: bool = Field(description="consistent with the Gumbel class")

    @property
    def max_value(self) -> float:
        return max(v for _, v in self.values)

    @property
    def max_increase(self) -> float:
        return max(
            max(b - a, 0.0) for (_, a), (_, b) in zip(self.values, self.secondary)
        )

    @property
    def verdict(self) -> str:
        return "consistent-with-Gumbel" if self.consistent else "inconsistent-with-Gumbel"


def _scaled(cdf: Callable[[float], float], eta: float, s: float, n: int) -> float:
    value = float(cdf(eta + s))
    if not value > 0.0:
        return 0.0
    # log form keeps s^-n F finite when F itself is tiny
    return math.exp(math.log(value) - n * math.log(s))


def gumbel_decay_check(
    cdf: Callable[[float], float],
    eta: float,
    n_max: int = 4,
    s: float = 1e-2,
    threshold: float = GUMBEL_DECAY_THRESHOLD,
) -> GumbelDecayResult:
    """
    Finite-s surrogate for (x - eta)^(-n) F(x) -> 0 as x decreases to eta.

    Examples:
        >>> gumbel_decay_check(lambda x: x**0.5, 0.0, n_max=1).consistent
        False
    """
    if n_max < 1:
        raise InvalidParameterError(f"n_max must be at least 1, got {n_max}")
    if not s > 0.0:
        raise InvalidParameterError(f"s must be positive, got {s}")
    orders = range(1, int(n_max) + 1)
    values = [(n, _scaled(cdf, eta, s, n)) for n in orders]
    secondary = [(n, _scaled(cdf, eta, s / 10.0, n)) for n in orders]
    consistent = all(v < threshold for _, v in values) and all(
        b <= a for (_, a), (_, b) in zip(values, secondary)
    )
    return GumbelDecayResult(
        s=s, threshold=threshold, values=values, secondary=secondary, consistent=consistent
    )


__all__ = [
    "ProbePoint",
    "RvProbe",
    "rv_exponent_probe",
    "GumbelDecayResult",
    "gumbel_decay_check",
]
