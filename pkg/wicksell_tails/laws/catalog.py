import math
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import Field
from scipy.special import gammaincinv

from ..config.types import Atom
from ..errors import DivergentMomentError
from .base import EvtClass, RadiusLaw

_INV_E = math.exp(-1.0)


class PowerLaw(RadiusLaw):
    """
    F(x) = x^alpha on [0, 1]; the uniform law is the case alpha = 1.

    Examples:
        >>> PowerLaw(alpha=0.5).cdf(0.25)
        0.5
    """

    kind: Literal["power"] = "power"
    alpha: float = Field(gt=0.0)

    @property
    def eta(self) -> float:
        return 0.0

    @property
    def upper_support(self) -> Optional[float]:
        return 1.0

    @property
    def evt_class(self) -> EvtClass:
        return EvtClass.weibull(self.alpha)

    @property
    def kinks(self) -> Tuple[float, ...]:
        return (1.0,)

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, 0.0, 1.0) ** self.alpha

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        inside = (x > 0.0) & (x < 1.0)
        return np.where(inside, self.alpha * np.where(inside, x, 1.0) ** (self.alpha - 1.0), 0.0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return p ** (1.0 / self.alpha)

    def cdf_at(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        return x**self.alpha

    def density_at(self, x: float) -> float:
        if 0.0 < x < 1.0:
            return self.alpha * x ** (self.alpha - 1.0)
        return 0.0

    def _ac_increment(self, a: float, d: float) -> float:
        if a >= 1.0:
            return 0.0
        if a + d >= 1.0:
            return -math.expm1(self.alpha * math.log(a))
        return a**self.alpha * math.expm1(self.alpha * math.log1p(d / a))

    def analytic_moment(self, r: float) -> Optional[float]:
        return self.alpha / (self.alpha + r)

    def analytic_inverse_moment(self) -> Optional[float]:
        if self.alpha <= 1.0:
            raise DivergentMomentError(-1, f"E(1/xi) diverges for power law alpha={self.alpha}")
        return self.alpha / (self.alpha - 1.0)

    def size_biased_quantile(self, r: float, p: np.ndarray) -> Optional[np.ndarray]:
        return np.asarray(p, dtype=float) ** (1.0 / (self.alpha + r))


class DiracLaw(RadiusLaw):
    """
    Point mass at rho. The density is absent; section formulas evaluate the atom exactly.
    """

    kind: Literal["dirac"] = "dirac"
    rho: float = Field(gt=0.0)

    @property
    def eta(self) -> float:
        return self.rho

    @property
    def upper_support(self) -> Optional[float]:
        return self.rho

    @property
    def evt_class(self) -> EvtClass:
        return EvtClass.weibull(math.inf)

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return ((self.rho, 1.0),)

    @property
    def has_density(self) -> bool:
        return False

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        return (x >= self.rho).astype(float)

    def _cdf_left(self, x: np.ndarray) -> np.ndarray:
        return (x > self.rho).astype(float)

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        return np.zeros_like(x)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return np.full_like(p, self.rho)

    def cdf_at(self, x: float) -> float:
        return 1.0 if x >= self.rho else 0.0

    def ac_cdf_at(self, x: float) -> float:
        return 0.0

    def ac_increment(self, a: float, d: float) -> float:
        return 0.0

    def analytic_moment(self, r: float) -> Optional[float]:
        return self.rho**r

    def analytic_inverse_moment(self) -> Optional[float]:
        return 1.0 / self.rho

    def size_biased_quantile(self, r: float, p: np.ndarray) -> Optional[np.ndarray]:
        return np.full_like(np.asarray(p, dtype=float), self.rho)


class WeibullLaw(RadiusLaw):
    """F(x) = 1 - exp(-(x / lambda)^alpha) on [0, inf)."""

    kind: Literal["weibull"] = "weibull"
    alpha: float = Field(gt=0.0)
    lam: float = Field(gt=0.0, alias="lambda")

    @property
    def eta(self) -> float:
        return 0.0

    @property
    def upper_support(self) -> Optional[float]:
        return None

    @property
    def evt_class(self) -> EvtClass:
        return EvtClass.weibull(self.alpha)

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        z = np.clip(x, 0.0, None) / self.lam
        return -np.expm1(-(z**self.alpha))

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        positive = x > 0.0
        z = np.where(positive, x, 1.0) / self.lam
        values = self.alpha / self.lam * z ** (self.alpha - 1.0) * np.exp(-(z**self.alpha))
        return np.where(positive, values, 0.0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return self.lam * (-np.log1p(-p)) ** (1.0 / self.alpha)

    def cdf_at(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return -math.expm1(-((x / self.lam) ** self.alpha))

    def density_at(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        z = x / self.lam
        return self.alpha / self.lam * z ** (self.alpha - 1.0) * math.exp(-(z**self.alpha))

    def _ac_increment(self, a: float, d: float) -> float:
        base = (a / self.lam) ** self.alpha
        growth = base * math.expm1(self.alpha * math.log1p(d / a))
        return math.exp(-base) * -math.expm1(-growth)

    def analytic_moment(self, r: float) -> Optional[float]:
        return self.lam**r * math.gamma(1.0 + r / self.alpha)

    def analytic_inverse_moment(self) -> Optional[float]:
        if self.alpha <= 1.0:
            raise DivergentMomentError(-1, f"E(1/xi) diverges for Weibull alpha={self.alpha}")
        return math.gamma(1.0 - 1.0 / self.alpha) / self.lam

    def size_biased_quantile(self, r: float, p: np.ndarray) -> Optional[np.ndarray]:
        # u^r dF(u) makes (u / lambda)^alpha Gamma(1 + r / alpha) distributed
        shape = 1.0 + r / self.alpha
        return self.lam * gammaincinv(shape, np.asarray(p, dtype=float)) ** (1.0 / self.alpha)


class TruncRecipExpLaw(RadiusLaw):
    """
    F(x) = exp(-1/x) for 0 < x < 1 and F(x) = 1 for x >= 1.

    The mass 1 - exp(-1) sits in an atom at 1. 1/xi is a unit exponential
    conditioned below at 1, so the lower tail lies in the Gumbel domain.
    """

    kind: Literal["truncrecipexp"] = "truncrecipexp"

    @property
    def eta(self) -> float:
        return 0.0

    @property
    def upper_support(self) -> Optional[float]:
        return 1.0

    @property
    def evt_class(self) -> EvtClass:
        return EvtClass.gumbel()

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return ((1.0, 1.0 - _INV_E),)

    @property
    def kinks(self) -> Tuple[float, ...]:
        return (1.0,)

    @property
    def label(self) -> str:
        return "truncrecipexp"

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        inside = (x > 0.0) & (x < 1.0)
        with np.errstate(divide="ignore", over="ignore"):
            body = np.exp(-1.0 / np.where(inside, x, 1.0))
        return np.where(x >= 1.0, 1.0, np.where(inside, body, 0.0))

    def _cdf_left(self, x: np.ndarray) -> np.ndarray:
        inside = (x > 0.0) & (x <= 1.0)
        with np.errstate(divide="ignore", over="ignore"):
            body = np.exp(-1.0 / np.where(inside, x, 1.0))
        return np.where(x > 1.0, 1.0, np.where(inside, body, 0.0))

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        inside = (x > 0.0) & (x < 1.0)
        z = np.where(inside, x, 1.0)
        with np.errstate(over="ignore"):
            values = np.exp(-1.0 / z) / (z * z)
        return np.where(inside, values, 0.0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        body = (p > 0.0) & (p <= _INV_E)
        safe = np.where(body, p, _INV_E)
        return np.where(p > _INV_E, 1.0, np.where(body, -1.0 / np.log(safe), 0.0))

    def cdf_at(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        return math.exp(-1.0 / x)

    def ac_cdf_at(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return _INV_E
        return math.exp(-1.0 / x)

    def density_at(self, x: float) -> float:
        if 0.0 < x < 1.0:
            return math.exp(-1.0 / x) / (x * x)
        return 0.0

    def _ac_increment(self, a: float, d: float) -> float:
        if a >= 1.0:
            return 0.0
        b = a + d
        if b < 1.0:
            return math.exp(-1.0 / b) * -math.expm1(-d / (a * b))
        return -_INV_E * math.expm1((a - 1.0) / a)


__all__ = ["PowerLaw", "DiracLaw", "WeibullLaw", "TruncRecipExpLaw"]
