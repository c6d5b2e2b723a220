from typing import Any, Literal, Optional, Tuple

import numpy as np
from pydantic import Field, SerializeAsAny, field_validator

from ..config.types import Atom
from .base import EvtClass, RadiusLaw


def _build_inner(value: Any) -> RadiusLaw:
    if isinstance(value, RadiusLaw):
        return value
    from .factory import LawFactory

    return LawFactory.create(value)


class ShiftedLaw(RadiusLaw):
    """
    An inner law translated by eta0, F(x) = F_inner(x - eta0).

    The declared class is the inner class; its lower endpoint becomes positive,
    which the domain table resolves downstream.
    """

    kind: Literal["shifted"] = "shifted"
    inner: SerializeAsAny[RadiusLaw]
    eta0: float = Field(ge=0.0)

    @field_validator("inner", mode="before")
    @classmethod
    def _inner_law(cls, value: Any) -> RadiusLaw:
        return _build_inner(value)

    @property
    def eta(self) -> float:
        return self.inner.eta + self.eta0

    @property
    def upper_support(self) -> Optional[float]:
        upper = self.inner.upper_support
        return None if upper is None else upper + self.eta0

    @property
    def evt_class(self) -> EvtClass:
        return self.inner.evt_class

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return tuple((a + self.eta0, w) for a, w in self.inner.atoms)

    @property
    def kinks(self) -> Tuple[float, ...]:
        return tuple(k + self.eta0 for k in self.inner.kinks)

    @property
    def has_density(self) -> bool:
        return self.inner.has_density

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        return self.inner._cdf(x - self.eta0)

    def _cdf_left(self, x: np.ndarray) -> np.ndarray:
        return self.inner._cdf_left(x - self.eta0)

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        return self.inner._pdf(x - self.eta0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return self.inner._quantile(p) + self.eta0

    def cdf_at(self, x: float) -> float:
        return self.inner.cdf_at(x - self.eta0)

    def ac_cdf_at(self, x: float) -> float:
        return self.inner.ac_cdf_at(x - self.eta0)

    def density_at(self, x: float) -> float:
        return self.inner.density_at(x - self.eta0)

    def ac_increment(self, a: float, d: float) -> float:
        return self.inner.ac_increment(a - self.eta0, d)


class ScaledLaw(RadiusLaw):
    """An inner law dilated by `factor`, F(x) = F_inner(x / factor)."""

    kind: Literal["scaled"] = "scaled"
    inner: SerializeAsAny[RadiusLaw]
    factor: float = Field(gt=0.0)

    @field_validator("inner", mode="before")
    @classmethod
    def _inner_law(cls, value: Any) -> RadiusLaw:
        return _build_inner(value)

    @property
    def eta(self) -> float:
        return self.inner.eta * self.factor

    @property
    def upper_support(self) -> Optional[float]:
        upper = self.inner.upper_support
        return None if upper is None else upper * self.factor

    @property
    def evt_class(self) -> EvtClass:
        return self.inner.evt_class

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return tuple((a * self.factor, w) for a, w in self.inner.atoms)

    @property
    def kinks(self) -> Tuple[float, ...]:
        return tuple(k * self.factor for k in self.inner.kinks)

    @property
    def has_density(self) -> bool:
        return self.inner.has_density

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        return self.inner._cdf(x / self.factor)

    def _cdf_left(self, x: np.ndarray) -> np.ndarray:
        return self.inner._cdf_left(x / self.factor)

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        return self.inner._pdf(x / self.factor) / self.factor

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return self.inner._quantile(p) * self.factor

    def cdf_at(self, x: float) -> float:
        return self.inner.cdf_at(x / self.factor)

    def ac_cdf_at(self, x: float) -> float:
        return self.inner.ac_cdf_at(x / self.factor)

    def density_at(self, x: float) -> float:
        return self.inner.density_at(x / self.factor) / self.factor

    def ac_increment(self, a: float, d: float) -> float:
        return self.inner.ac_increment(a / self.factor, d / self.factor)

    def analytic_moment(self, r: float) -> Optional[float]:
        inner = self.inner.analytic_moment(r)
        return None if inner is None else inner * self.factor**r

    def analytic_inverse_moment(self) -> Optional[float]:
        inner = self.inner.analytic_inverse_moment()
        return None if inner is None else inner / self.factor

    def size_biased_quantile(self, r: float, p: np.ndarray) -> Optional[np.ndarray]:
        inner = self.inner.size_biased_quantile(r, p)
        return None if inner is None else inner * self.factor


__all__ = ["ShiftedLaw", "ScaledLaw"]
