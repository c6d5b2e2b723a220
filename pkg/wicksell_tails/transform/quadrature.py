import logging
import math
from typing import Callable, Iterable, List, Optional, Sequence

from scipy.integrate import quad

from ..config.settings import QuadratureConfig
from ..errors import QuadratureError

logger = logging.getLogger(__name__)

ERROR_SLACK = 1e3
_TINY = 1e-300


def segment_breaks(
    lower: float,
    upper: float,
    anchor: Optional[float] = None,
    ratio: float = 10.0,
    extra: Iterable[float] = (),
) -> List[float]:
    """
    Sorted breakpoints covering [lower, upper].

    Points grow geometrically from `anchor` by `ratio` until `upper`; any
    `extra` points strictly inside the interval are merged in.

    Examples:
        >>> segment_breaks(0.0, 1.0, anchor=0.001)
        [0.0, 0.001, 0.01, 0.1, 1.0]
    """
    points = {float(lower), float(upper)}
    if anchor is not None and anchor > 0.0:
        point = float(anchor)
        while point < upper:
            if point > lower:
                points.add(point)
            point *= ratio
    for point in extra:
        if lower < point < upper:
            points.add(float(point))
    return sorted(points)


def integrate_segments(
    func: Callable[[float], float],
    breaks: Sequence[float],
    config: QuadratureConfig,
    abscissa: Optional[float] = None,
) -> float:
    """
    Sum of adaptive Gauss-Kronrod integrals of `func` over consecutive breaks.

    Each segment gets its own relative tolerance, so integrals spanning many
    decades keep their accuracy in the small segments. QUADPACK messages are
    logged per segment at DEBUG; a single WARNING is emitted when the summed
    error estimate exceeds `ERROR_SLACK * epsrel` of the whole integral.

    Raises:
        QuadratureError: If a segment yields a non-finite value.
    """
    total = 0.0
    error = 0.0
    reported = 0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if not hi > lo:
            continue
        result = quad(
            func,
            lo,
            hi,
            epsabs=config.epsabs,
            epsrel=config.epsrel,
            limit=config.limit,
            full_output=1,
        )
        value, abserr = result[0], result[1]
        if not math.isfinite(value):
            raise QuadratureError(f"non-finite integral on [{lo!r}, {hi!r}]", abscissa)
        if len(result) > 3:
            reported += 1
            logger.debug(
                "quadrature on [%g, %g] reported: %s (value %g, error %g, x=%s)",
                lo,
                hi,
                str(result[3]).splitlines()[0],
                value,
                abserr,
                abscissa,
            )
        total += value
        error += abserr
    if reported and error > max(config.epsabs, ERROR_SLACK * config.epsrel * abs(total), _TINY):
        logger.warning(
            "quadrature at x=%s: %d segment(s) reported problems; error %g against integral %g",
            abscissa,
            reported,
            error,
            total,
        )
    return total


__all__ = ["segment_breaks", "integrate_segments"]
