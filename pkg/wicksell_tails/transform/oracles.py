import logging
import math
from typing import NamedTuple, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..config.settings import QuadratureConfig
from ..config.types import ArrayLike
from ..errors import DomainError, InvalidParameterError
from ..laws.base import RadiusLaw, as_array, restore
from .moments import moment
from .quadrature import integrate_segments, segment_breaks

logger = logging.getLogger(__name__)


class CdfDecomposition(NamedTuple):
    """F^(1)(t) split into the mass below t and the chord mass above it."""

    i1: float
    i2: float
    total: float


class GFactorLaw(BaseModel):
    """
    The law of the factor eta_1 on (1, inf) with density g(v) = v / sqrt(v^2 - 1) - 1.

    With eta_1 ~ g and eta_2 ~ U(0, 1) independent of the radius xi,
    F^(1)(t) = (t / M_1) [P(xi <= t eta_1) - P(xi <= t eta_2)].

    Examples:
        >>> GFactorLaw().quantile(0.5)
        1.25
    """

    model_config = ConfigDict(frozen=True)

    @staticmethod
    def _root(v: np.ndarray) -> np.ndarray:
        # v + sqrt(v^2 - 1), i.e. exp(acosh v)
        return v + np.sqrt((v - 1.0) * (v + 1.0))

    def cdf(self, v: ArrayLike) -> Union[float, np.ndarray]:
        arr, scalar = as_array(v)
        out = np.zeros_like(arr)
        inside = arr > 1.0
        out[inside] = 1.0 - 1.0 / self._root(arr[inside])
        return restore(out, scalar)

    def pdf(self, v: ArrayLike) -> Union[float, np.ndarray]:
        arr, scalar = as_array(v)
        out = np.zeros_like(arr)
        inside = arr > 1.0
        w = arr[inside]
        out[inside] = 1.0 / (np.sqrt((w - 1.0) * (w + 1.0)) * self._root(w))
        return restore(out, scalar)

    def quantile(self, p: ArrayLike) -> Union[float, np.ndarray]:
        """
        (1 + q^2) / (2 q) with q = 1 - p.

        Raises:
            DomainError: Unless every p lies in the open interval (0, 1).
        """
        arr, scalar = as_array(p)
        if not np.all((arr > 0.0) & (arr < 1.0)):
            raise DomainError("g-factor quantile needs p in the open interval (0, 1)")
        q = 1.0 - arr
        return restore((1.0 + q * q) / (2.0 * q), scalar)

    def sample(
        self, n: int, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None
    ) -> np.ndarray:
        if n < 0:
            raise InvalidParameterError(f"sample size must be non-negative, got {n}")
        generator = rng if rng is not None else np.random.default_rng(seed)
        q = 1.0 - generator.random(n)
        return (1.0 + q * q) / (2.0 * q)


def gfactor_quantile(p: ArrayLike) -> Union[float, np.ndarray]:
    return GFactorLaw().quantile(p)


def gfactor_sample(n: int, seed: Optional[int] = None) -> np.ndarray:
    """Inverse-transform draws of eta_1, deterministic for a fixed (seed, n)."""
    return GFactorLaw().sample(n, seed=seed)


def _check_abscissa(t: float) -> float:
    if not t > 0.0:
        raise DomainError(f"section radius must be positive, got {t!r}")
    return float(t)


def _support_points(law: RadiusLaw, upper: float):
    points = {law.eta, upper, *law.kinks, *(a for a, _ in law.atoms)}
    return sorted(p for p in points if 0.0 < p <= upper)


def decomposed_cdf_oracle(
    law: RadiusLaw, t: float, config: Optional[QuadratureConfig] = None
) -> CdfDecomposition:
    """
    F^(1)(t) as (I1 + I2) / M_1 with I1 = int_0^t u dF(u) and
    I2 = int_t^inf (u - sqrt(u^2 - t^2)) dF(u).

    The integrals run in the radius variable u against the density of F,
    independently of the s-substitution used by `section_cdf`.

    Examples:
        >>> decomposed_cdf_oracle(DiracLaw(rho=1.0), 0.6).total
        0.2
    """
    t = _check_abscissa(t)
    config = config or QuadratureConfig()
    m1 = moment(law, 1, config)
    upper = law.scale(config.tail_probability)
    points = _support_points(law, upper)

    i1 = sum(a * w for a, w in law.atoms if a <= t)
    i2 = sum(w * t * t / (a + math.sqrt((a - t) * (a + t))) for a, w in law.atoms if a > t)
    if law.has_density:
        top = min(t, upper)
        if top > law.eta:
            below = _geometric_down(top, law.eta, config.segment_ratio)
            breaks = sorted({0.0, top, *below, *(p for p in points if p < top)})
            i1 += integrate_segments(lambda u: u * law.density_at(u), breaks, config, t)
        if upper > t:

            def chord(u: float) -> float:
                return t * t / (u + math.sqrt((u - t) * (u + t))) * law.density_at(u)

            upper_breaks = segment_breaks(t, upper, t, config.segment_ratio, points)
            i2 += integrate_segments(chord, upper_breaks, config, t)
    total = (i1 + i2) / m1
    return CdfDecomposition(i1=i1, i2=i2, total=min(max(total, 0.0), 1.0))


def _geometric_down(t: float, floor: float, ratio: float):
    points = []
    point = t / ratio
    while point > floor and point > t * 1e-12:
        points.append(point)
        point /= ratio
    return points


def mixture_cdf_oracle(
    law: RadiusLaw, t: float, config: Optional[QuadratureConfig] = None
) -> float:
    """
    F^(1)(t) through the mixing identity (t / M_1) [P(xi <= t eta_1) - P(xi <= t eta_2)].

    P(xi <= t eta_1) is integrated over theta = acosh(eta_1), whose density is
    exp(-theta); P(xi <= t eta_2) = int_0^1 F(t v) dv.

    Examples:
        >>> round(mixture_cdf_oracle(DiracLaw(rho=1.0), 0.6), 12)
        0.2
    """
    t = _check_abscissa(t)
    config = config or QuadratureConfig()
    m1 = moment(law, 1, config)
    upper = law.scale(config.tail_probability)
    points = _support_points(law, upper)

    if t >= upper:
        p1 = 1.0
    else:
        top = math.acosh(upper / t)
        images = [math.acosh(b / t) for b in points if b > t]
        anchor = math.acosh(law.eta / t) if law.eta > t else None
        breaks = segment_breaks(0.0, top, anchor, config.segment_ratio, images)
        body = integrate_segments(
            lambda theta: law.cdf_at(t * math.cosh(theta)) * math.exp(-theta), breaks, config, t
        )
        p1 = math.exp(-top) + body

    v_points = [b / t for b in points if b < t]
    v_anchor = law.eta / t if 0.0 < law.eta < t else None
    p2 = integrate_segments(
        lambda v: law.cdf_at(t * v),
        segment_breaks(0.0, 1.0, v_anchor, config.segment_ratio, v_points),
        config,
        t,
    )
    value = t * (p1 - p2) / m1
    return min(max(value, 0.0), 1.0)


__all__ = [
    "CdfDecomposition",
    "GFactorLaw",
    "gfactor_quantile",
    "gfactor_sample",
    "decomposed_cdf_oracle",
    "mixture_cdf_oracle",
]
