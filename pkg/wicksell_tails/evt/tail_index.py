import logging
import math
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..config.settings import DEFAULT_S_LIST
from ..errors import (
    DegenerateThresholdError,
    DomainError,
    InvalidParameterError,
    UnderflowError,
)

logger = logging.getLogger(__name__)

UNDERFLOW_FLOOR = 1e-300
MONOTONE_TOLERANCE = 1e-6


class SlopeModel(str, Enum):
    PLAIN = "plain"
    LOG_CORRECTED = "log-corrected"


class EstimationMethod(str, Enum):
    LOCAL_EXPONENT = "local-exponent"
    RECIPROCAL_HILL = "reciprocal-hill"


class TailIndexEstimate(BaseModel):
    """
    An estimated lower-tail exponent.

    Attributes:
        beta_hat (float): The estimate.
        slopes (List[Tuple[float, float]]): (s, local slope) for every probe point, in request order.
        model (SlopeModel): Plain last slope or log-corrected extrapolation.
        stderr (Optional[float]): Standard error when one is available.
        method (EstimationMethod): Estimator that produced the value.
        ill_conditioned (bool): Set when the slope sequence is not monotone.
        k (Optional[int]): Number of upper order statistics (Hill only).
    """

    beta_hat: float = Field(gt=0.0, allow_inf_nan=False)
    slopes: List[Tuple[float, float]] = Field(default_factory=list)
    model: SlopeModel = SlopeModel.LOG_CORRECTED
    stderr: Optional[float] = Field(default=None, ge=0.0)
    method: EstimationMethod = EstimationMethod.LOCAL_EXPONENT
    ill_conditioned: bool = False
    k: Optional[int] = None


def _is_monotone(values: np.ndarray) -> bool:
    steps = np.diff(values)
    return bool(np.all(steps >= -MONOTONE_TOLERANCE) or np.all(steps <= MONOTONE_TOLERANCE))


def local_tail_exponent(
    cdf_handle: Callable[[float], float],
    eta: float,
    s_list: Optional[Sequence[float]] = None,
    ratio: float = 2.0,
    model: SlopeModel = SlopeModel.LOG_CORRECTED,
) -> TailIndexEstimate:
    """
    Estimate beta from local slopes log[F(eta + ratio s) / F(eta + s)] / log(ratio).

    The log-corrected model fits slope(s) = beta + c / log(1/s) by least
    squares and reports the intercept; the plain model reports the slope at
    the smallest s.

    Raises:
        UnderflowError: If F(eta + s) is zero or below 1e-300 for some s.
        InvalidParameterError: If ratio <= 1 or the s list is empty.

    Examples:
        >>> round(local_tail_exponent(lambda x: x**0.5, 0.0).beta_hat, 12)
        0.5
    """
    s_values = [float(s) for s in (s_list if s_list is not None else DEFAULT_S_LIST)]
    if not s_values or any(not s > 0.0 for s in s_values):
        raise InvalidParameterError("s_list must hold positive probe points")
    if not ratio > 1.0:
        raise InvalidParameterError(f"ratio must exceed 1, got {ratio}")
    model = SlopeModel(model)
    log_ratio = math.log(ratio)
    slopes = []
    for s in s_values:
        low = float(cdf_handle(eta + s))
        if not low > UNDERFLOW_FLOOR:
            raise UnderflowError(s, low)
        high = float(cdf_handle(eta + ratio * s))
        slopes.append((s, math.log(high / low) / log_ratio))

    ordered = sorted(slopes, key=lambda item: -item[0])
    values = np.array([v for _, v in ordered])
    ill_conditioned = not _is_monotone(values)
    if ill_conditioned:
        logger.warning("local slopes are not monotone in s: %s", np.round(values, 6).tolist())

    beta_hat, stderr = float(values[-1]), None
    if model == SlopeModel.LOG_CORRECTED and len(values) >= 2 and all(s < 1.0 for s, _ in ordered):
        design = np.column_stack([np.ones(len(values)), [1.0 / math.log(1.0 / s) for s, _ in ordered]])
        coef, _, _, _ = np.linalg.lstsq(design, values, rcond=None)
        if len(values) > 2:
            residual = values - design @ coef
            sigma2 = float(residual @ residual) / (len(values) - 2)
            stderr = math.sqrt(sigma2 * np.linalg.inv(design.T @ design)[0, 0])
        if coef[0] > 0.0 and math.isfinite(coef[0]):
            beta_hat = float(coef[0])
        else:
            logger.warning("log-corrected intercept %.6g is not positive; keeping the last slope", coef[0])
            ill_conditioned = True
            stderr = None
    elif model == SlopeModel.LOG_CORRECTED:
        model = SlopeModel.PLAIN
    if not beta_hat > 0.0:
        raise DomainError(f"local tail exponent {beta_hat:.6g} is not positive")
    return TailIndexEstimate(
        beta_hat=beta_hat,
        slopes=slopes,
        model=model,
        stderr=stderr,
        method=EstimationMethod.LOCAL_EXPONENT,
        ill_conditioned=ill_conditioned,
    )


def reciprocal_hill(samples: Sequence[float], eta: float, k: int) -> TailIndexEstimate:
    """
    Hill estimator applied to Y = 1 / (X - eta), whose upper tail index is beta.

    Raises:
        DomainError: If k >= n or some sample is not above eta.
        DegenerateThresholdError: If the top k log-spacings vanish.
        InvalidParameterError: If k < 1.
    """
    x = np.asarray(samples, dtype=float)
    n = x.size
    if int(k) != k or k < 1:
        raise InvalidParameterError(f"k must be a positive integer, got {k}")
    if k >= n:
        raise DomainError(f"k must be below the sample size {n}, got {k}")
    excess = x - eta
    if not np.all(excess > 0.0):
        raise DomainError(f"every sample must exceed eta={eta!r}")
    log_y = np.sort(-np.log(excess))
    threshold = log_y[n - k - 1]
    spacing = float(np.mean(log_y[n - k:]) - threshold)
    if not spacing > 0.0:
        raise DegenerateThresholdError(
            f"the top {k} order statistics coincide with the threshold; no tail spacing"
        )
    beta_hat = 1.0 / spacing
    return TailIndexEstimate(
        beta_hat=beta_hat,
        slopes=[],
        model=SlopeModel.PLAIN,
        stderr=beta_hat / math.sqrt(k),
        method=EstimationMethod.RECIPROCAL_HILL,
        k=int(k),
    )


__all__ = [
    "SlopeModel",
    "EstimationMethod",
    "TailIndexEstimate",
    "local_tail_exponent",
    "reciprocal_hill",
]
