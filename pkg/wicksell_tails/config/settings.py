from datetime import datetime, timezone
from typing import List, Optional

from decouple import config
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .storage import StorageConfig

DEFAULT_S_LIST = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]


def _source_date() -> Optional[str]:
    epoch = config("SOURCE_DATE_EPOCH", default=None)
    if epoch is None:
        return None
    return datetime.fromtimestamp(int(epoch), tz=timezone.utc).isoformat()


class QuadratureConfig(BaseModel):
    """
    Tolerances and segmentation rules for every adaptive integral in the package.

    Attributes:
        epsrel (float): Relative tolerance handed to QUADPACK. Read from `WICKSELL_QUAD_EPSREL`.
        epsabs (float): Absolute tolerance. Zero lets the relative tolerance govern tiny tail values.
        limit (int): Maximum number of subintervals per segment.
        segment_ratio (float): Geometric ratio of the integration segments anchored at the abscissa.
        tail_probability (float): Unbounded supports are truncated at the `1 - tail_probability` quantile.
        divergence_tolerance (float): Relative growth past the truncation point that marks a moment as divergent.
        workers (int): Threads used to evaluate tabulation abscissae. Read from `WICKSELL_WORKERS`.
    """

    epsrel: float = Field(
        default_factory=lambda: config("WICKSELL_QUAD_EPSREL", default=1e-10, cast=float),
        gt=0.0,
        lt=1.0,
    )
    epsabs: float = Field(default=0.0, ge=0.0)
    limit: int = Field(default=200, ge=10)
    segment_ratio: float = Field(default=10.0, gt=1.0)
    tail_probability: float = Field(default=1e-12, gt=0.0, lt=1e-3)
    divergence_tolerance: float = Field(default=1e-8, gt=0.0)
    workers: int = Field(
        default_factory=lambda: config("WICKSELL_WORKERS", default=1, cast=int), ge=1
    )

    model_config = ConfigDict(validate_assignment=True, frozen=True)

    def cache_fields(self) -> dict:
        """Fields that change tabulated values (thread count does not)."""
        return self.model_dump(exclude={"workers"})


class GridSpec(BaseModel):
    """
    Abscissae of a section table.

    The table holds `points` log-spaced abscissae from `grid_min * scale` to `scale`,
    merged with `edge_points` abscissae clustered geometrically toward `scale` and
    `shoulder_points` abscissae spread evenly in sqrt(scale - x) over the top
    `shoulder_span` fraction of the support. `scale` is the upper support of the
    law (or its upper quantile).
    """

    grid_min: float = Field(
        default_factory=lambda: config("WICKSELL_GRID_MIN", default=1e-7, cast=float),
        gt=0.0,
        lt=1.0,
    )
    points: int = Field(
        default_factory=lambda: config("WICKSELL_GRID_POINTS", default=512, cast=int),
        ge=2,
    )
    edge_points: int = Field(default=48, ge=0)
    edge_gap_min: float = Field(default=1e-12, gt=0.0, lt=1e-2)
    shoulder_points: int = Field(default=64, ge=0)
    shoulder_span: float = Field(default=0.5, gt=0.0, lt=1.0)

    model_config = ConfigDict(validate_assignment=True, frozen=True)


class SamplingConfig(BaseModel):
    """
    Monte Carlo settings.

    Attributes:
        chunk_size (int): Draws per independent stream; results do not depend on the thread count.
        workers (int): Threads drawing chunks concurrently. Read from `WICKSELL_WORKERS`.
        max_expected_spheres (float): Upper bound on the expected sphere count of a 3D run.
        biased_grid_points (int): Knots of the tabulated size-biased CDF used when no closed form exists.
    """

    chunk_size: int = Field(default=65536, ge=1)
    workers: int = Field(
        default_factory=lambda: config("WICKSELL_WORKERS", default=1, cast=int), ge=1
    )
    max_expected_spheres: float = Field(default=1e7, gt=0.0)
    biased_grid_points: int = Field(default=4096, ge=16)

    model_config = ConfigDict(validate_assignment=True, frozen=True)


class VerifyConfig(BaseModel):
    """
    Everything a verification run depends on.

    The timestamp is taken from `SOURCE_DATE_EPOCH` when present and is otherwise
    left empty, so two runs with the same seed render byte-identical reports.
    """

    seed: int = Field(default=42)
    alphas: List[float] = Field(default_factory=lambda: [0.5, 1.0, 1.5, 2.5])
    etas: List[float] = Field(default_factory=lambda: [0.0, 0.5])
    corollary_r: List[int] = Field(default_factory=lambda: [2, 3])
    s_list: List[float] = Field(default_factory=lambda: list(DEFAULT_S_LIST))
    ratio: float = Field(default=2.0, gt=1.0)
    quadratic_probe: float = Field(default=1e-6, gt=0.0, lt=1e-2)
    grid: GridSpec = Field(default_factory=GridSpec)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    storage: StorageConfig = Field(default_factory=StorageConfig)
    timestamp: Optional[str] = Field(default_factory=_source_date)

    model_config = ConfigDict(validate_assignment=True, arbitrary_types_allowed=True)

    @field_validator("alphas")
    @classmethod
    def _positive_alphas(cls, value: List[float]) -> List[float]:
        if any(alpha <= 0 for alpha in value):
            raise ValueError("alphas must be strictly positive")
        return value

    @field_validator("etas")
    @classmethod
    def _non_negative_etas(cls, value: List[float]) -> List[float]:
        if any(eta < 0 for eta in value):
            raise ValueError("etas must be non-negative")
        return value

    @field_validator("corollary_r")
    @classmethod
    def _positive_codimensions(cls, value: List[int]) -> List[int]:
        if any(r < 1 for r in value):
            raise ValueError("codimensions must be at least 1")
        return value

    @field_validator("s_list")
    @classmethod
    def _probe_points(cls, value: List[float]) -> List[float]:
        if not value or any(not 0.0 < s < 1.0 for s in value):
            raise ValueError("s_list must hold values in (0, 1)")
        return value


__all__ = [
    "DEFAULT_S_LIST",
    "QuadratureConfig",
    "GridSpec",
    "SamplingConfig",
    "VerifyConfig",
]
