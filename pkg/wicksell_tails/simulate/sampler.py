import logging
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.interpolate import PchipInterpolator

from ..config.settings import QuadratureConfig, SamplingConfig
from ..errors import InvalidParameterError
from ..laws.base import RadiusLaw
from ..laws.tabulated import TabulatedLaw
from ..transform.moments import moment
from ..transform.quadrature import integrate_segments
from .streams import (
    ANALYTIC_STREAM,
    BIASED_STREAM,
    child_rng,
    chunk_plan,
    open_uniform,
    run_chunks,
)

logger = logging.getLogger(__name__)

LEVEL_FLOOR = 1e-12


class SampleMode(str, Enum):
    """How a section sample was produced."""

    ANALYTIC = "analytic"
    GEOMETRIC3D = "geometric3d"

    @classmethod
    def values(cls) -> List[str]:
        return [mode.value for mode in cls]


class SectionSample(BaseModel):
    """
    Simulated section radii.

    Attributes:
        r (int): Codimension the radii were drawn for.
        n (int): Number of radii (for geometric runs, the number of hits).
        seed (int): Seed every stream was derived from.
        values (np.ndarray): The radii.
        mode (SampleMode): Analytic size-biased construction or 3D Boolean model.
        law_spec (Optional[Dict[str, Any]]): Specification of the radius law, if it has one.
    """

    r: int = Field(ge=1)
    n: int = Field(ge=0)
    seed: int
    values: np.ndarray
    mode: SampleMode = SampleMode.ANALYTIC
    law_spec: Optional[Dict[str, Any]] = None

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


def law_spec_of(law: RadiusLaw) -> Optional[Dict[str, Any]]:
    if isinstance(law, TabulatedLaw):
        return law.spec()
    return law.model_dump(mode="json")


class SizeBiasedSampler:
    """
    Draws from the size-biased law u^r dF(u) / M_r.

    Strategies, in order: atom selection when F is purely atomic, the law's
    closed-form biased quantile, and otherwise inversion of a tabulated
    biased CDF (atoms are kept as an exact mixture component).
    """

    def __init__(
        self,
        law: RadiusLaw,
        r: int,
        config: Optional[SamplingConfig] = None,
        quadrature: Optional[QuadratureConfig] = None,
    ):
        if int(r) != r or r < 1:
            raise InvalidParameterError(f"codimension r must be a positive integer, got {r}")
        self._law = law
        self._r = int(r)
        self._config = config or SamplingConfig()
        self._quadrature = quadrature or QuadratureConfig()
        self._atom_locations = np.array([a for a, _ in law.atoms], dtype=float)
        self._atom_weights = np.array([w * a**self._r for a, w in law.atoms], dtype=float)
        self._inverse: Optional[PchipInterpolator] = None
        self._atom_share = 0.0
        if not law.has_density:
            self.strategy = "atoms"
        elif law.size_biased_quantile(self._r, np.array([0.5])) is not None:
            self.strategy = "closed-form"
        else:
            self.strategy = "tabulated"
            self._build_table()
        logger.debug("size-biased sampler for %s (r=%d): %s", law.label, self._r, self.strategy)

    @property
    def law(self) -> RadiusLaw:
        return self._law

    @property
    def r(self) -> int:
        return self._r

    def _build_table(self) -> None:
        law, r = self._law, self._r
        m_r = moment(law, r, self._quadrature)
        upper = law.scale(self._quadrature.tail_probability)
        points = self._config.biased_grid_points
        if law.eta > 0.0:
            grid = np.linspace(law.eta, upper, points)
        else:
            grid = np.concatenate([[0.0], np.geomspace(upper * 1e-12, upper, points - 1)])
        extra = [k for k in law.kinks if grid[0] < k < upper]
        grid = np.unique(np.concatenate([grid, extra]))

        def weighted(u: float) -> float:
            return u**r * law.density_at(u)

        panels = [integrate_segments(weighted, [lo, hi], self._quadrature) for lo, hi in zip(grid[:-1], grid[1:])]
        cumulative = np.concatenate([[0.0], np.cumsum(panels)])
        ac_mass = cumulative[-1]
        self._atom_share = float(self._atom_weights.sum() / m_r) if self._atom_weights.size else 0.0
        if ac_mass <= 0.0:
            raise InvalidParameterError(f"{law.label} has no biased mass on its density part")
        levels = cumulative / ac_mass
        # levels closer than LEVEL_FLOOR are merged; the top level always stays
        index = np.flatnonzero(np.concatenate([[True], np.diff(levels) > LEVEL_FLOOR]))
        index[-1] = levels.size - 1
        self._inverse = PchipInterpolator(levels[index], grid[index])

    def _from_atoms(self, u: np.ndarray) -> np.ndarray:
        cumulative = np.cumsum(self._atom_weights)
        cumulative /= cumulative[-1]
        index = np.searchsorted(cumulative, u, side="left")
        return self._atom_locations[np.minimum(index, cumulative.size - 1)]

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        u = open_uniform(rng, size)
        if self.strategy == "atoms":
            return self._from_atoms(u)
        if self.strategy == "closed-form":
            return np.asarray(self._law.size_biased_quantile(self._r, u), dtype=float)
        values = np.empty(size)
        pick_atom = u < self._atom_share
        if np.any(pick_atom):
            values[pick_atom] = self._from_atoms(u[pick_atom] / self._atom_share)
        rest = ~pick_atom
        if np.any(rest):
            values[rest] = self._inverse((u[rest] - self._atom_share) / (1.0 - self._atom_share))
        return values


def _check_size(n: int) -> int:
    if int(n) != n or n < 0:
        raise InvalidParameterError(f"sample size must be a non-negative integer, got {n}")
    return int(n)


def sample_size_biased(
    law: RadiusLaw,
    r: int,
    n: int,
    seed: int,
    config: Optional[SamplingConfig] = None,
) -> np.ndarray:
    """
    n draws from u^r dF(u) / M_r.

    Raises:
        DivergentMomentError: If M_r is infinite.

    Examples:
        >>> sample_size_biased(DiracLaw(rho=1.0), 2, 3, seed=7).tolist()
        [1.0, 1.0, 1.0]
    """
    n = _check_size(n)
    config = config or SamplingConfig()
    sampler = SizeBiasedSampler(law, r, config)
    parts = run_chunks(
        lambda chunk, size: sampler.sample(size, child_rng(seed, BIASED_STREAM, chunk)),
        chunk_plan(n, config.chunk_size),
        config.workers,
    )
    return np.concatenate(parts) if parts else np.empty(0)


def sample_section_radii(
    law: RadiusLaw,
    r: int,
    n: int,
    seed: int,
    config: Optional[SamplingConfig] = None,
) -> SectionSample:
    """
    n exact draws from F^(r).

    Each draw takes a size-biased radius R and an independent U ~ U(0, 1) and
    returns X = R sqrt(1 - U^(2/r)): the distance from the sphere centre to the
    section, R U^(1/r), has density r d^(r-1) / R^r on (0, R).
    """
    n = _check_size(n)
    config = config or SamplingConfig()
    sampler = SizeBiasedSampler(law, r, config)
    exponent = 2.0 / sampler.r

    def draw(chunk: int, size: int) -> np.ndarray:
        rng = child_rng(seed, ANALYTIC_STREAM, chunk)
        radii = sampler.sample(size, rng)
        u = open_uniform(rng, size)
        return radii * np.sqrt(-np.expm1(exponent * np.log(u)))

    parts = run_chunks(draw, chunk_plan(n, config.chunk_size), config.workers)
    values = np.concatenate(parts) if parts else np.empty(0)
    logger.debug("drew %d section radii of %s with r=%d", n, law.label, r)
    return SectionSample(
        r=int(r), n=n, seed=seed, values=values, mode=SampleMode.ANALYTIC, law_spec=law_spec_of(law)
    )


__all__ = [
    "SampleMode",
    "SectionSample",
    "SizeBiasedSampler",
    "sample_size_biased",
    "sample_section_radii",
    "law_spec_of",
]
