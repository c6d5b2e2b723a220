from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid
from pydantic import BaseModel, ConfigDict, Field

from ..config.settings import GridSpec
from ..errors import InvalidTableError
from ..laws.base import EvtClass
from ..laws.tabulated import TabulatedLaw

CDF_FLOOR_TOLERANCE = 1e-6
MASS_TOLERANCE = 1e-3


class SectionLaw(BaseModel):
    """
    A tabulated section-radius law F^(r).

    Attributes:
        r (int): Codimension of the section.
        moment (float): Moment of the input law used by the last transform step.
        grid (np.ndarray): Strictly increasing abscissae.
        cdf_values (np.ndarray): F^(r) at the abscissae.
        pdf_values (np.ndarray): f^(r) at the abscissae; `inf` where an atom makes it singular.
        source (str): Originating law and transform chain.
        grid_spec (GridSpec): Parameters the grid was built from.
        evt_class (EvtClass): Declared min-domain of F^(r).
        dims (Optional[Tuple[int, int]]): (n, k) when the table was requested by dimensions.
    """

    r: int = Field(ge=1)
    moment: float = Field(gt=0.0)
    grid: np.ndarray
    cdf_values: np.ndarray
    pdf_values: np.ndarray
    source: str
    grid_spec: GridSpec = Field(default_factory=GridSpec)
    evt_class: EvtClass
    dims: Optional[Tuple[int, int]] = None

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def violations(self) -> List[str]:
        """Invariant violations of the table, empty when it is valid."""
        x, cdf, pdf = self.grid, self.cdf_values, self.pdf_values
        if x.ndim != 1 or cdf.shape != x.shape or pdf.shape != x.shape:
            return ["grid, cdf and pdf must be 1-d arrays of equal length"]
        if x.size < 2:
            return [f"a table needs at least 2 knots, got {x.size}"]
        problems = []
        if not np.all(np.diff(x) > 0.0):
            problems.append("grid is not strictly increasing")
        if np.any(np.isnan(cdf)) or np.any(cdf < 0.0) or np.any(cdf > 1.0):
            problems.append("cdf values leave [0, 1]")
        if np.any(np.diff(cdf) < 0.0):
            problems.append("cdf values decrease")
        if cdf[0] > CDF_FLOOR_TOLERANCE:
            problems.append(f"first cdf value {cdf[0]:.3g} exceeds {CDF_FLOOR_TOLERANCE:g}")
        if cdf[-1] < 1.0 - CDF_FLOOR_TOLERANCE:
            problems.append(f"last cdf value {cdf[-1]:.9g} is below 1 - {CDF_FLOOR_TOLERANCE:g}")
        if np.any(np.isnan(pdf)) or np.any(pdf < 0.0):
            problems.append("pdf values are negative or undefined")
        elif self.mass_defect() > MASS_TOLERANCE:
            problems.append(f"trapezoid mass {self.mass():.6f} outside 1 +/- {MASS_TOLERANCE:g}")
        return problems

    def ensure_valid(self) -> "SectionLaw":
        """
        Raises:
            InvalidTableError: Listing every violated invariant.
        """
        problems = self.violations()
        if problems:
            raise InvalidTableError(f"invalid section table ({self.source}): " + "; ".join(problems))
        return self

    def mass(self) -> float:
        """Trapezoid integral of the density over the grid."""
        return float(trapezoid(self.pdf_values, self.grid))

    def mass_defect(self) -> float:
        """|mass - 1|, or 0 when the density is infinite at a knot and the mass is not checked."""
        if not np.all(np.isfinite(self.pdf_values)):
            return 0.0
        return abs(self.mass() - 1.0)

    @cached_property
    def law(self) -> TabulatedLaw:
        """The table as a radius law, ready to be sectioned again."""
        return TabulatedLaw.from_table(self.grid, self.cdf_values, self.evt_class, self.source)

    def cdf(self, x):
        """Monotone interpolation of the tabulated CDF."""
        return self.law.cdf(x)

    def to_payload(self) -> Dict[str, Any]:
        payload = self.model_dump(exclude={"grid", "cdf_values", "pdf_values"})
        payload["grid"] = self.grid.tolist()
        payload["cdf_values"] = self.cdf_values.tolist()
        payload["pdf_values"] = self.pdf_values.tolist()
        return payload

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> "SectionLaw":
        data = dict(payload)
        for key in ("grid", "cdf_values", "pdf_values"):
            data[key] = np.asarray(data[key], dtype=float)
        return cls(**data)


__all__ = ["SectionLaw"]
