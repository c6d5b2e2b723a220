from .block_minima import (
    BlockMinimaResult,
    Normalization,
    block_minima_experiment,
    ks_distance,
    two_sample_ks,
)
from .minstable import MinStableLaw, min_stable_cdf
from .probes import GumbelDecayResult, RvProbe, gumbel_decay_check, rv_exponent_probe
from .tail_index import (
    EstimationMethod,
    SlopeModel,
    TailIndexEstimate,
    local_tail_exponent,
    reciprocal_hill,
)

__all__ = [
    "BlockMinimaResult",
    "Normalization",
    "block_minima_experiment",
    "ks_distance",
    "two_sample_ks",
    "MinStableLaw",
    "min_stable_cdf",
    "GumbelDecayResult",
    "RvProbe",
    "gumbel_decay_check",
    "rv_exponent_probe",
    "EstimationMethod",
    "SlopeModel",
    "TailIndexEstimate",
    "local_tail_exponent",
    "reciprocal_hill",
]
