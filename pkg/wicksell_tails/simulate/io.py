import json
from pathlib import Path
from typing import Union

import pandas as pd

from ..transform.io import sidecar_path
from .sampler import SampleMode, SectionSample

PathLike = Union[str, Path]


def save_sample(sample: SectionSample, path: PathLike) -> Path:
    """Write radii as CSV `value` plus the sidecar `{law_spec, r, n, seed, mode}`."""
    path = Path(path)
    pd.DataFrame({"value": sample.values}).to_csv(path, index=False, float_format="%.17g")
    meta = {
        "law_spec": sample.law_spec,
        "r": sample.r,
        "n": sample.n,
        "seed": sample.seed,
        "mode": sample.mode.value,
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True, default=str) + "\n")
    return path


def load_sample(path: PathLike) -> SectionSample:
    """Read radii from a CSV with a `value` column; the sidecar is optional."""
    path = Path(path)
    frame = pd.read_csv(path)
    if "value" not in frame.columns:
        raise ValueError(f"{path} lacks a 'value' column")
    values = frame["value"].to_numpy(dtype=float)
    meta_file = sidecar_path(path)
    meta = json.loads(meta_file.read_text()) if meta_file.exists() else {}
    return SectionSample(
        r=int(meta.get("r", 1)),
        n=int(values.size),
        seed=int(meta.get("seed", 0)),
        values=values,
        mode=SampleMode(meta.get("mode", SampleMode.ANALYTIC.value)),
        law_spec=meta.get("law_spec"),
    )


__all__ = ["save_sample", "load_sample"]
