import logging
from enum import Enum
from typing import Callable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy import stats

from ..config.types import SamplerHandle
from ..errors import InvalidParameterError, ScaleError
from ..simulate.streams import BLOCK_STREAM, child_rng, chunk_plan, run_chunks
from .minstable import MinStableLaw

logger = logging.getLogger(__name__)

BLOCKS_PER_TASK = 256
MIN_BLOCKS = 100


class Normalization(str, Enum):
    """
    WEIBULL: b_m = eta, a_m = quantile(1/m) - eta.
    GUMBEL: b_m = quantile(1/m), a_m = F(b_m) / f(b_m).
    """

    WEIBULL = "weibull"
    GUMBEL = "gumbel"


class BlockMinimaResult(BaseModel):
    """
    Normalised block minima and their distance to a candidate limit law.

    Attributes:
        m (int): Block size.
        n_blocks (int): Number of blocks.
        a_m (float): Scale of the normalisation.
        b_m (float): Location of the normalisation.
        normalized (List[float]): (W_m - b_m) / a_m per block, in block order.
        candidate (MinStableLaw): Law the minima are compared with.
        ks_stat (float): Kolmogorov-Smirnov distance to the candidate.
        normalization (Normalization): Normalising sequence used.
        seed (int): Seed the block streams were derived from.
    """

    m: int = Field(ge=2)
    n_blocks: int = Field(ge=1)
    a_m: float = Field(gt=0.0)
    b_m: float
    normalized: List[float]
    candidate: MinStableLaw
    ks_stat: float = Field(ge=0.0, le=1.0)
    normalization: Normalization = Normalization.WEIBULL
    seed: int = 0


def ks_distance(
    sample: Sequence[float],
    cdf: Callable[[np.ndarray], np.ndarray],
    cdf_left: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> float:
    """
    Sup-distance between the empirical CDF of `sample` and `cdf`.

    When the target has atoms, pass its left limits as `cdf_left`; the
    supremum is then taken exactly over both one-sided limits.

    Examples:
        >>> ks_distance([0.5], lambda x: np.clip(x, 0.0, 1.0))
        0.5
    """
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if n == 0:
        raise InvalidParameterError("KS distance of an empty sample")
    if cdf_left is None:
        return float(stats.kstest(x, cdf).statistic)
    ranks = np.arange(1, n + 1) / n
    upper = np.max(ranks - np.asarray(cdf(x), dtype=float))
    lower = np.max(np.asarray(cdf_left(x), dtype=float) - (ranks - 1.0 / n))
    return float(np.clip(max(upper, lower), 0.0, 1.0))


def two_sample_ks(first: Sequence[float], second: Sequence[float]) -> float:
    """Two-sample Kolmogorov-Smirnov statistic."""
    return float(stats.ks_2samp(first, second).statistic)


def block_minima_experiment(
    sampler_handle: SamplerHandle,
    quantile_handle: Callable[[float], float],
    eta: float,
    m: int,
    n_blocks: int,
    candidate: MinStableLaw,
    seed: int,
    normalization: Normalization = Normalization.WEIBULL,
    cdf_handle: Optional[Callable[[float], float]] = None,
    density_handle: Optional[Callable[[float], float]] = None,
    workers: int = 1,
) -> BlockMinimaResult:
    """
    Normalised minima of `n_blocks` blocks of `m` draws, compared with `candidate`.

    Block i draws from its own generator derived from (seed, i), so the
    result does not depend on `workers`.

    Args:
        sampler_handle (SamplerHandle): `(size, rng) -> draws`.
        quantile_handle (Callable[[float], float]): Quantile function of the sampled law.
        eta (float): Lower endpoint of the sampled law.
        normalization (Normalization): Weibull (b_m = eta) or Gumbel (needs cdf and density handles).

    Raises:
        ScaleError: If the normalising scale is not positive.
        InvalidParameterError: If m < 2, n_blocks < 100, or Gumbel handles are missing.
    """
    if int(m) != m or m < 2:
        raise InvalidParameterError(f"block size must be at least 2, got {m}")
    if int(n_blocks) != n_blocks or n_blocks < MIN_BLOCKS:
        raise InvalidParameterError(f"need at least {MIN_BLOCKS} blocks, got {n_blocks}")
    normalization = Normalization(normalization)
    level = float(quantile_handle(1.0 / m))
    if normalization == Normalization.WEIBULL:
        b_m, a_m = float(eta), level - float(eta)
    else:
        if cdf_handle is None or density_handle is None:
            raise InvalidParameterError("Gumbel normalisation needs cdf and density handles")
        density = float(density_handle(level))
        b_m = level
        a_m = float(cdf_handle(level)) / density if density > 0.0 else 0.0
    if not a_m > 0.0:
        raise ScaleError(f"normalising scale a_m={a_m!r} is not positive (m={m})")

    def run(task: int, size: int) -> np.ndarray:
        first = task * BLOCKS_PER_TASK
        return np.array(
            [
                np.min(sampler_handle(int(m), child_rng(seed, BLOCK_STREAM, block)))
                for block in range(first, first + size)
            ]
        )

    minima = np.concatenate(run_chunks(run, chunk_plan(int(n_blocks), BLOCKS_PER_TASK), workers))
    normalized = (minima - b_m) / a_m
    ks_stat = ks_distance(normalized, candidate.cdf)
    logger.debug("block minima m=%d, blocks=%d against %s: KS %.4f", m, n_blocks, candidate, ks_stat)
    return BlockMinimaResult(
        m=int(m),
        n_blocks=int(n_blocks),
        a_m=a_m,
        b_m=b_m,
        normalized=normalized.tolist(),
        candidate=candidate,
        ks_stat=ks_stat,
        normalization=normalization,
        seed=seed,
    )


__all__ = [
    "Normalization",
    "BlockMinimaResult",
    "ks_distance",
    "two_sample_ks",
    "block_minima_experiment",
]
