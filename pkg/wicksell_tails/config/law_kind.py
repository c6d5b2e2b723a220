from enum import Enum
from typing import List


class LawKind(str, Enum):
    """
    Catalog tags of the sphere-radius laws.

    Attributes:
        POWER (str): F(x) = x^alpha on [0, 1].
        UNIFORM (str): Uniform law on [0, 1], a power law with alpha = 1.
        DIRAC (str): Point mass at rho.
        WEIBULL (str): F(x) = 1 - exp(-(x / lambda)^alpha).
        SHIFTED (str): An inner law translated by eta0.
        SCALED (str): An inner law dilated by a factor.
        TRUNCRECIPEXP (str): F(x) = exp(-1/x) on (0, 1) with the remaining mass at 1.
        TABULATED (str): A monotone interpolant of a section table.
    """

    POWER = "power"
    UNIFORM = "uniform"
    DIRAC = "dirac"
    WEIBULL = "weibull"
    SHIFTED = "shifted"
    SCALED = "scaled"
    TRUNCRECIPEXP = "truncrecipexp"
    TABULATED = "tabulated"

    @classmethod
    def values(cls) -> List[str]:
        return [kind.value for kind in cls]


class EvtVariant(str, Enum):
    """Min-stable families in the minima convention."""

    FRECHET = "frechet"
    WEIBULL = "weibull"
    GUMBEL = "gumbel"

    @classmethod
    def values(cls) -> List[str]:
        return [variant.value for variant in cls]


__all__ = ["LawKind", "EvtVariant"]
