from .boolean3d import simulate_planar_section_3d
from .io import load_sample, save_sample
from .sampler import (
    SampleMode,
    SectionSample,
    SizeBiasedSampler,
    sample_section_radii,
    sample_size_biased,
)
from .streams import child_rng, chunk_plan, run_chunks

__all__ = [
    "simulate_planar_section_3d",
    "load_sample",
    "save_sample",
    "SampleMode",
    "SectionSample",
    "SizeBiasedSampler",
    "sample_section_radii",
    "sample_size_biased",
    "child_rng",
    "chunk_plan",
    "run_chunks",
]
