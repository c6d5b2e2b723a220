import math
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..config.law_kind import EvtVariant
from ..config.types import ArrayLike, Atom
from ..errors import DomainError, InvalidParameterError


class EvtClass(BaseModel):
    """
    Declared min-domain of attraction of a law.

    Weibull and Frechet classes carry a strictly positive index `alpha`; the
    Gumbel class carries none. A point mass is recorded as Weibull with an
    infinite index.
    """

    variant: EvtVariant
    alpha: Optional[float] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_index(self) -> "EvtClass":
        if self.variant == EvtVariant.GUMBEL:
            if self.alpha is not None:
                raise ValueError("the Gumbel class carries no index")
        elif self.alpha is None or not self.alpha > 0:
            raise ValueError(f"{self.variant.value} class needs a positive index")
        return self

    @classmethod
    def weibull(cls, alpha: float) -> "EvtClass":
        return cls(variant=EvtVariant.WEIBULL, alpha=alpha)

    @classmethod
    def gumbel(cls) -> "EvtClass":
        return cls(variant=EvtVariant.GUMBEL)

    @classmethod
    def frechet(cls, alpha: float) -> "EvtClass":
        return cls(variant=EvtVariant.FRECHET, alpha=alpha)

    def __str__(self) -> str:
        if self.alpha is None:
            return self.variant.value.capitalize()
        return f"{self.variant.value.capitalize()}({self.alpha:g})"


def as_array(x: ArrayLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def restore(values: np.ndarray, scalar: bool) -> Union[float, np.ndarray]:
    return float(values) if scalar else values


class RadiusLaw(BaseModel, ABC):
    """
    An evaluable sphere-radius distribution F.

    Laws are immutable. Vectorised evaluation goes through `cdf`, `pdf`,
    `quantile` and `sample`; the quadrature engine uses the scalar fast paths
    `cdf_at`, `density_at` and `ac_increment`, which work on the absolutely
    continuous part of F. Atoms are reported separately through `atoms`.
    """

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        populate_by_name=True,
        arbitrary_types_allowed=True,
    )

    @property
    @abstractmethod
    def eta(self) -> float:
        """Lower endpoint of the support."""

    @property
    @abstractmethod
    def upper_support(self) -> Optional[float]:
        """Upper endpoint of the support, or None when unbounded."""

    @property
    @abstractmethod
    def evt_class(self) -> EvtClass:
        """Declared min-domain of attraction."""

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        """(location, mass) pairs of the point masses of F."""
        return ()

    @property
    def kinks(self) -> Tuple[float, ...]:
        """Interior points where the density of F is not smooth."""
        return ()

    @property
    def has_density(self) -> bool:
        return True

    @property
    def label(self) -> str:
        params = self.model_dump(exclude={"kind"})
        inner = ", ".join(f"{k}={_format(v)}" for k, v in params.items())
        return f"{self.kind}({inner})"  # type: ignore[attr-defined]

    def spec(self) -> Dict[str, Any]:
        """Plain-dict specification accepted by `make_law`."""
        return self.model_dump()

    @abstractmethod
    def _cdf(self, x: np.ndarray) -> np.ndarray: ...

    def _cdf_left(self, x: np.ndarray) -> np.ndarray:
        return self._cdf(x)

    @abstractmethod
    def _pdf(self, x: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _quantile(self, p: np.ndarray) -> np.ndarray: ...

    def cdf(self, x: ArrayLike) -> Union[float, np.ndarray]:
        arr, scalar = as_array(x)
        return restore(np.clip(self._cdf(arr), 0.0, 1.0), scalar)

    def cdf_left(self, x: ArrayLike) -> Union[float, np.ndarray]:
        """Left limits F(x-), which differ from `cdf` only at atoms."""
        arr, scalar = as_array(x)
        return restore(np.clip(self._cdf_left(arr), 0.0, 1.0), scalar)

    def pdf(self, x: ArrayLike) -> Optional[Union[float, np.ndarray]]:
        """Density of the absolutely continuous part, or None for a pure point mass."""
        if not self.has_density:
            return None
        arr, scalar = as_array(x)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return restore(self._pdf(arr), scalar)

    def quantile(self, p: ArrayLike) -> Union[float, np.ndarray]:
        """
        Generalised inverse inf{x : F(x) >= p}.

        Raises:
            DomainError: If any probability lies outside [0, 1].
        """
        arr, scalar = as_array(p)
        if not np.all((arr >= 0.0) & (arr <= 1.0)):
            raise DomainError("quantile probabilities must lie in [0, 1]")
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return restore(self._quantile(arr), scalar)

    def sample(
        self,
        n: int,
        seed: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> np.ndarray:
        """Inverse-transform sample of size n; deterministic for a fixed (seed, n)."""
        if n < 0:
            raise InvalidParameterError(f"sample size must be non-negative, got {n}")
        generator = rng if rng is not None else np.random.default_rng(seed)
        return np.asarray(self.quantile(generator.random(n)), dtype=float)

    def scale(self, tail_probability: float = 1e-12) -> float:
        """Upper support, or the `1 - tail_probability` quantile when unbounded."""
        if self.upper_support is not None:
            return float(self.upper_support)
        return float(self.quantile(1.0 - tail_probability))

    def cdf_at(self, x: float) -> float:
        return float(np.clip(self._cdf(np.asarray(float(x))), 0.0, 1.0))

    def ac_cdf_at(self, x: float) -> float:
        """CDF of the absolutely continuous part (a sub-probability)."""
        mass = sum(w for a, w in self.atoms if a <= x)
        return max(self.cdf_at(x) - mass, 0.0)

    def density_at(self, x: float) -> float:
        if not self.has_density:
            return 0.0
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            value = float(self._pdf(np.asarray(float(x))))
        return value if math.isfinite(value) else 0.0

    def ac_increment(self, a: float, d: float) -> float:
        """
        F_ac(a + d) - F_ac(a) for the absolutely continuous part, without cancellation.

        Args:
            a (float): Left end of the increment.
            d (float): Non-negative width of the increment.
        """
        if d <= 0.0:
            return 0.0
        if a <= self.eta:
            return self.ac_cdf_at(a + d)
        return self._ac_increment(a, d)

    def _ac_increment(self, a: float, d: float) -> float:
        return self.ac_cdf_at(a + d) - self.ac_cdf_at(a)

    def analytic_moment(self, r: float) -> Optional[float]:
        """Closed-form M_r, or None when the transform module must integrate."""
        return None

    def analytic_inverse_moment(self) -> Optional[float]:
        """Closed-form E(1/xi), or None when it must be integrated."""
        return None

    def size_biased_quantile(self, r: float, p: np.ndarray) -> Optional[np.ndarray]:
        """Quantile of u^r dF(u) / M_r in closed form, or None."""
        return None


def _format(value: Any) -> str:
    if isinstance(value, dict) and "kind" in value:
        params = ", ".join(
            f"{k}={_format(v)}" for k, v in value.items() if k != "kind"
        )
        return f"{value['kind']}({params})"
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


__all__ = ["EvtClass", "RadiusLaw", "as_array", "restore"]
