import json
import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from ..config.settings import GridSpec
from ..laws.base import EvtClass
from .section_law import SectionLaw

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
COLUMNS = ["x", "cdf", "pdf"]


def sidecar_path(path: PathLike) -> Path:
    """The JSON metadata file written next to a CSV table."""
    return Path(path).with_suffix(".json")


def save_section_law(sl: SectionLaw, path: PathLike) -> Path:
    """
    Write a section table as CSV `x,cdf,pdf` plus its JSON sidecar.

    Returns:
        Path: The CSV path.
    """
    path = Path(path)
    frame = pd.DataFrame({"x": sl.grid, "cdf": sl.cdf_values, "pdf": sl.pdf_values}, columns=COLUMNS)
    frame.to_csv(path, index=False, float_format="%.17g")
    meta = {
        "r": sl.r,
        "moment": sl.moment,
        "source": sl.source,
        "grid_min": sl.grid_spec.grid_min,
        "points": sl.grid_spec.points,
        "edge_points": sl.grid_spec.edge_points,
        "shoulder_points": sl.grid_spec.shoulder_points,
        "evt_class": sl.evt_class.model_dump(mode="json"),
        "dims": list(sl.dims) if sl.dims is not None else None,
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    logger.debug("wrote %d knots of %s to %s", sl.grid.size, sl.source, path)
    return path


def load_section_law(path: PathLike) -> SectionLaw:
    """
    Read a table written by `save_section_law`.

    A missing sidecar is tolerated for hand-made tables: r defaults to 1, the
    moment to the trapezoid mean of the table and the class to Weibull(2).
    """
    path = Path(path)
    frame = pd.read_csv(path)
    missing = [c for c in ("x", "cdf") if c not in frame.columns]
    if missing:
        raise ValueError(f"{path} lacks column(s) {', '.join(missing)}")
    grid = frame["x"].to_numpy(dtype=float)
    cdf = frame["cdf"].to_numpy(dtype=float)
    pdf = frame["pdf"].to_numpy(dtype=float) if "pdf" in frame.columns else np.gradient(cdf, grid)
    meta_file = sidecar_path(path)
    meta = json.loads(meta_file.read_text()) if meta_file.exists() else {}
    spec_fields = {k: meta[k] for k in ("grid_min", "points", "edge_points", "shoulder_points") if k in meta}
    moment = meta.get("moment")
    if moment is None:
        moment = float(grid[-1] - np.sum(np.diff(grid) * 0.5 * (cdf[1:] + cdf[:-1])))
    dims = meta.get("dims")
    return SectionLaw(
        r=int(meta.get("r", 1)),
        moment=float(moment),
        grid=grid,
        cdf_values=cdf,
        pdf_values=pdf,
        source=meta.get("source", path.stem),
        grid_spec=GridSpec(**spec_fields),
        evt_class=EvtClass(**meta["evt_class"]) if "evt_class" in meta else EvtClass.weibull(2.0),
        dims=tuple(dims) if dims else None,
    )


__all__ = ["save_section_law", "load_section_law", "sidecar_path"]
