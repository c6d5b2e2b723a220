import logging
import math
from typing import Optional

from ..config.settings import QuadratureConfig
from ..errors import DivergentMomentError, InvalidParameterError
from ..laws.base import RadiusLaw
from .quadrature import integrate_segments, segment_breaks

logger = logging.getLogger(__name__)


def _law_points(law: RadiusLaw, upper: float):
    points = {law.eta, *law.kinks, *(a for a, _ in law.atoms)}
    return [p for p in points if 0.0 < p < upper]


def moment(law: RadiusLaw, r: float, config: Optional[QuadratureConfig] = None) -> float:
    """
    The r-th moment M_r of a radius law.

    Uses the law's closed form when it has one and otherwise integrates
    M_r = r * int u^(r-1) (1 - F(u)) du up to the upper support (or the
    `1 - tail_probability` quantile).

    Raises:
        InvalidParameterError: If r is not positive.
        DivergentMomentError: If the integral keeps growing past the truncation point.

    Examples:
        >>> moment(PowerLaw(alpha=1.0), 1)
        0.5
    """
    if not r > 0:
        raise InvalidParameterError(f"moment order must be positive, got {r}")
    analytic = law.analytic_moment(r)
    if analytic is not None:
        return float(analytic)
    config = config or QuadratureConfig()
    upper = law.scale(config.tail_probability)

    def survival(u: float) -> float:
        return r * u ** (r - 1.0) * (1.0 - law.cdf_at(u))

    anchor = float(law.quantile(0.5))
    breaks = segment_breaks(0.0, upper, anchor, config.segment_ratio, _law_points(law, upper))
    value = integrate_segments(survival, breaks, config)
    if law.upper_support is None:
        beyond = integrate_segments(survival, [upper, 2.0 * upper], config)
        if beyond > config.divergence_tolerance * max(value, 1e-300):
            raise DivergentMomentError(
                r, f"moment of order {r} still growing past u={upper:g} ({beyond:g} of {value:g})"
            )
        value += beyond
    if not math.isfinite(value) or value <= 0.0:
        raise DivergentMomentError(r, f"moment of order {r} is not a positive finite number")
    logger.debug("M_%s of %s by quadrature: %.15g", r, law.label, value)
    return value


def inverse_moment(law: RadiusLaw, config: Optional[QuadratureConfig] = None) -> float:
    """
    E(1/xi), the quantity that fixes the quadratic constant of F^(1) near zero.

    Raises:
        DivergentMomentError: If the lower tail makes the expectation infinite.
    """
    analytic = law.analytic_inverse_moment()
    if analytic is not None:
        return float(analytic)
    config = config or QuadratureConfig()
    value = 0.0
    for a, w in law.atoms:
        if a <= 0.0:
            raise DivergentMomentError(-1, "atom at zero makes E(1/xi) infinite")
        value += w / a
    if not law.has_density:
        return value
    upper = law.scale(config.tail_probability)
    lower = law.eta if law.eta > 0.0 else 1e-12 * upper

    def reciprocal(u: float) -> float:
        return law.density_at(u) / u

    breaks = segment_breaks(lower, upper, lower, config.segment_ratio, _law_points(law, upper))
    body = integrate_segments(reciprocal, breaks, config)
    if law.eta <= 0.0:
        growth = integrate_segments(reciprocal, [lower * 1e-3, lower], config)
        if growth > 1e-3 * max(body, 1e-300):
            raise DivergentMomentError(-1, "E(1/xi) diverges at the lower endpoint")
        body += growth
    return value + body


def quadratic_tail_constant(law: RadiusLaw, config: Optional[QuadratureConfig] = None) -> float:
    """
    Limit of F^(1)(t) / t^2 as t decreases to 0, equal to E(1/xi) / (2 M_1).

    Examples:
        >>> quadratic_tail_constant(DiracLaw(rho=1.0))
        0.5
    """
    return inverse_moment(law, config) / (2.0 * moment(law, 1, config))


__all__ = ["moment", "inverse_moment", "quadratic_tail_constant"]
