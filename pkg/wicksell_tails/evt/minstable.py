from typing import Union

import numpy as np

from ..config.law_kind import EvtVariant
from ..config.types import ArrayLike
from ..laws.base import EvtClass, as_array, restore


class MinStableLaw(EvtClass):
    """
    Limit law of normalised minima (minima convention).

    H_{1,a}(x) = 1 - exp(-(-x)^(-a)) for x < 0,
    H_{2,a}(x) = 1 - exp(-x^a) for x > 0,
    H_3(x) = 1 - exp(-e^x).

    Examples:
        >>> round(MinStableLaw.weibull(2.0).cdf(1.0), 7)
        0.6321206
        >>> round(MinStableLaw.gumbel().cdf(0.0), 7)
        0.6321206
    """

    def cdf(self, x: ArrayLike) -> Union[float, np.ndarray]:
        arr, scalar = as_array(x)
        out = np.zeros_like(arr)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if self.variant == EvtVariant.GUMBEL:
                out = -np.expm1(-np.exp(arr))
            elif self.variant == EvtVariant.WEIBULL:
                inside = arr > 0.0
                out[inside] = -np.expm1(-(arr[inside] ** self.alpha))
            else:
                inside = arr < 0.0
                out[inside] = -np.expm1(-((-arr[inside]) ** -self.alpha))
                out[~inside] = 1.0
        return restore(np.nan_to_num(out, nan=0.0), scalar)

    @classmethod
    def from_class(cls, evt_class: EvtClass) -> "MinStableLaw":
        return cls(variant=evt_class.variant, alpha=evt_class.alpha)


def min_stable_cdf(law: MinStableLaw, x: ArrayLike) -> Union[float, np.ndarray]:
    return law.cdf(x)


__all__ = ["MinStableLaw", "min_stable_cdf"]
