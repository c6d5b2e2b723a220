import logging
from typing import Optional

import numpy as np

from ..config.settings import SamplingConfig
from ..errors import DomainError, InvalidParameterError, ResourceBudgetError
from ..laws.base import RadiusLaw
from .sampler import SampleMode, SectionSample, law_spec_of
from .streams import COUNT_STREAM, GEOMETRIC_STREAM, child_rng, chunk_plan, run_chunks

logger = logging.getLogger(__name__)


def simulate_planar_section_3d(
    law: RadiusLaw,
    intensity: float,
    half_thickness: float,
    window_area: float,
    seed: int,
    config: Optional[SamplingConfig] = None,
) -> SectionSample:
    """
    Section a Poisson Boolean model of balls by the plane z = 0.

    Centres form a Poisson process of the given intensity in the slab
    window x (-half_thickness, half_thickness); radii are iid from `law`.
    Only the z coordinate matters for the section radius, so the planar
    position of a centre is not drawn. A ball with |z| < R leaves a disc of
    radius sqrt(R^2 - z^2).

    Raises:
        DomainError: If the radius law is unbounded or reaches past the slab.
        ResourceBudgetError: If the expected number of balls exceeds the budget.
        InvalidParameterError: For a negative intensity or non-positive geometry.
    """
    config = config or SamplingConfig()
    if intensity < 0.0:
        raise InvalidParameterError(f"intensity must be non-negative, got {intensity}")
    if not half_thickness > 0.0 or not window_area > 0.0:
        raise InvalidParameterError("half_thickness and window_area must be positive")
    upper = law.upper_support
    if upper is None or upper > half_thickness:
        raise DomainError(
            f"radii of {law.label} reach past the slab half-thickness {half_thickness:g}"
        )
    expected = intensity * window_area * 2.0 * half_thickness
    if expected > config.max_expected_spheres:
        raise ResourceBudgetError(
            f"expected {expected:.3g} balls exceeds the budget of {config.max_expected_spheres:.3g}"
        )

    count = int(child_rng(seed, COUNT_STREAM).poisson(expected)) if expected > 0.0 else 0

    def draw(chunk: int, size: int) -> np.ndarray:
        rng = child_rng(seed, GEOMETRIC_STREAM, chunk)
        depth = np.abs(rng.uniform(-half_thickness, half_thickness, size))
        radii = law.sample(size, rng=rng)
        hit = depth < radii
        return np.sqrt((radii[hit] - depth[hit]) * (radii[hit] + depth[hit]))

    parts = run_chunks(draw, chunk_plan(count, config.chunk_size), config.workers)
    values = np.concatenate(parts) if parts else np.empty(0)
    logger.debug("3D run: %d balls, %d hits", count, values.size)
    return SectionSample(
        r=1,
        n=int(values.size),
        seed=seed,
        values=values,
        mode=SampleMode.GEOMETRIC3D,
        law_spec=law_spec_of(law),
    )


__all__ = ["simulate_planar_section_3d"]
