from typing import Literal, Optional

import numpy as np

from wicksell_tails.laws.base import EvtClass, RadiusLaw


class HeavyTailLaw(RadiusLaw):
    """F(x) = x / (1 + x): no finite mean, so every moment of order >= 1 diverges."""

    kind: Literal["heavy"] = "heavy"

    @property
    def eta(self) -> float:
        return 0.0

    @property
    def upper_support(self) -> Optional[float]:
        return None

    @property
    def evt_class(self) -> EvtClass:
        return EvtClass.weibull(1.0)

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        x = np.maximum(x, 0.0)
        return x / (1.0 + x)

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        return np.where(x > 0.0, 1.0 / (1.0 + np.maximum(x, 0.0)) ** 2, 0.0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return p / (1.0 - p)


__all__ = ["HeavyTailLaw"]
