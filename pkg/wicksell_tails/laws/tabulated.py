import math
from bisect import bisect_right
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import Field, PrivateAttr
from scipy.interpolate import PchipInterpolator

from ..errors import InvalidTableError
from .base import EvtClass, RadiusLaw

_FLOOR = 1e-300
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)


class TabulatedLaw(RadiusLaw):
    """
    A radius law interpolating a tabulated CDF.

    The CDF is interpolated by a monotone piecewise-cubic (PCHIP) rule in
    (log x, log F) coordinates, normalised so that its last knot equals 1.
    Below the first knot it continues as the power law through the first two
    knots; above the last knot it equals 1. Build instances through
    `from_table`, which checks the table first.
    """

    kind: Literal["tabulated"] = "tabulated"
    grid: np.ndarray
    cdf_values: np.ndarray
    declared_class: EvtClass
    source: str = Field(default="")

    _t: List[float] = PrivateAttr(default_factory=list)
    _phi: List[float] = PrivateAttr(default_factory=list)
    _coef: List[Tuple[float, float, float, float]] = PrivateAttr(default_factory=list)
    _t_arr: np.ndarray = PrivateAttr(default=None)
    _phi_arr: np.ndarray = PrivateAttr(default=None)
    _coef_arr: np.ndarray = PrivateAttr(default=None)
    _slope: float = PrivateAttr(default=0.0)
    _top: float = PrivateAttr(default=0.0)

    @classmethod
    def from_table(
        cls,
        grid: np.ndarray,
        cdf_values: np.ndarray,
        declared_class: EvtClass,
        source: str = "",
    ) -> "TabulatedLaw":
        """
        Validate a table and build its interpolant.

        Raises:
            InvalidTableError: If the grid is not strictly increasing and positive,
                if fewer than two knots carry positive probability, or if the
                lower tail is flat.
        """
        x = np.asarray(grid, dtype=float)
        values = np.asarray(cdf_values, dtype=float)
        if x.ndim != 1 or values.shape != x.shape:
            raise InvalidTableError("grid and cdf values must be 1-d arrays of equal length")
        if x.size < 2:
            raise InvalidTableError(f"a table needs at least 2 knots, got {x.size}")
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(values)):
            raise InvalidTableError("table contains non-finite values")
        if x[0] <= 0.0 or not np.all(np.diff(x) > 0.0):
            raise InvalidTableError("grid must be positive and strictly increasing")
        values = np.maximum.accumulate(np.clip(values, 0.0, 1.0))
        keep = values > _FLOOR
        if np.count_nonzero(keep) < 2:
            raise InvalidTableError("fewer than two knots carry positive probability")
        x, values = x[keep], values[keep]
        if values[1] <= values[0]:
            raise InvalidTableError("flat lower tail: the first two positive knots are equal")
        return cls(
            grid=x,
            cdf_values=values,
            declared_class=declared_class,
            source=source,
        )

    def model_post_init(self, __context) -> None:
        t = np.log(self.grid)
        phi = np.log(self.cdf_values)
        phi = phi - phi[-1]
        interpolant = PchipInterpolator(t, phi, extrapolate=False)
        coef = np.ascontiguousarray(interpolant.c.T)
        self._t_arr = t
        self._phi_arr = phi
        self._coef_arr = coef
        self._t = t.tolist()
        self._phi = phi.tolist()
        self._coef = [tuple(row) for row in coef.tolist()]
        self._slope = float((phi[1] - phi[0]) / (t[1] - t[0]))
        self._top = float(self.grid[int(np.argmax(phi >= 0.0))])

    @property
    def eta(self) -> float:
        return 0.0

    @property
    def upper_support(self) -> Optional[float]:
        return float(self.grid[-1])

    @property
    def evt_class(self) -> EvtClass:
        return self.declared_class

    @property
    def label(self) -> str:
        return f"tabulated({self.source})" if self.source else "tabulated"

    def spec(self) -> dict:
        return {"kind": self.kind, "source": self.source}

    @property
    def lower_slope(self) -> float:
        """Exponent of the power-law continuation below the first knot."""
        return self._slope

    def _phi_vector(self, tt: np.ndarray, derivative: bool = False) -> np.ndarray:
        t, coef = self._t_arr, self._coef_arr
        idx = np.clip(np.searchsorted(t, tt, side="right") - 1, 0, len(t) - 2)
        h = tt - t[idx]
        c = coef[idx]
        if derivative:
            inside = (3.0 * c[..., 0] * h + 2.0 * c[..., 1]) * h + c[..., 2]
            below = np.full_like(tt, self._slope)
            above = np.zeros_like(tt)
        else:
            inside = ((c[..., 0] * h + c[..., 1]) * h + c[..., 2]) * h + c[..., 3]
            below = self._phi[0] + self._slope * (tt - t[0])
            above = np.zeros_like(tt)
        return np.where(tt < t[0], below, np.where(tt >= t[-1], above, inside))

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        positive = x > 0.0
        tt = np.log(np.where(positive, x, 1.0))
        return np.where(positive, np.exp(self._phi_vector(tt)), 0.0)

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        positive = x > 0.0
        safe = np.where(positive, x, 1.0)
        tt = np.log(safe)
        values = np.exp(self._phi_vector(tt)) * self._phi_vector(tt, derivative=True) / safe
        return np.where(positive, values, 0.0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        t, phi, coef = self._t_arr, self._phi_arr, self._coef_arr
        out = np.empty_like(p)
        zero = p <= 0.0
        top = p >= 1.0
        target = np.log(np.where(zero | top, 1.0, p))
        below = ~zero & ~top & (target < phi[0])
        inside = ~zero & ~top & ~below
        out[zero] = 0.0
        out[top] = self._top
        out[below] = np.exp(t[0] + (target[below] - phi[0]) / self._slope)
        if np.any(inside):
            goal = target[inside]
            idx = np.clip(np.searchsorted(phi, goal, side="left") - 1, 0, len(t) - 2)
            width = t[idx + 1] - t[idx]
            c = coef[idx]
            rise = phi[idx + 1] - phi[idx]
            frac = np.where(rise > 0.0, (goal - phi[idx]) / np.where(rise > 0.0, rise, 1.0), 0.0)
            h = np.clip(frac, 0.0, 1.0) * width
            lo, hi = np.zeros_like(h), width.copy()
            for _ in range(60):
                value = ((c[:, 0] * h + c[:, 1]) * h + c[:, 2]) * h + c[:, 3] - goal
                slope = (3.0 * c[:, 0] * h + 2.0 * c[:, 1]) * h + c[:, 2]
                lo = np.where(value < 0.0, h, lo)
                hi = np.where(value >= 0.0, h, hi)
                with np.errstate(divide="ignore", invalid="ignore"):
                    step = h - value / slope
                bad = ~np.isfinite(step) | (step <= lo) | (step >= hi)
                h_next = np.where(bad, 0.5 * (lo + hi), step)
                if np.all(np.abs(h_next - h) <= 1e-15 * np.maximum(width, 1e-300)):
                    h = h_next
                    break
                h = h_next
            out[inside] = np.exp(t[idx] + h)
        return out

    def _phi_value(self, tt: float) -> float:
        t = self._t
        if tt <= t[0]:
            return self._phi[0] + self._slope * (tt - t[0])
        if tt >= t[-1]:
            return 0.0
        i = bisect_right(t, tt) - 1
        c0, c1, c2, c3 = self._coef[i]
        h = tt - t[i]
        return ((c0 * h + c1) * h + c2) * h + c3

    def _phi_slope(self, tt: float) -> float:
        t = self._t
        if tt < t[0]:
            return self._slope
        if tt >= t[-1]:
            return 0.0
        i = bisect_right(t, tt) - 1
        c0, c1, c2, _ = self._coef[i]
        h = tt - t[i]
        return (3.0 * c0 * h + 2.0 * c1) * h + c2

    def _cubic_delta(self, i: int, h: float, step: float) -> float:
        # p(h + step) - p(h) expanded so that no large terms cancel
        c0, c1, c2, _ = self._coef[i]
        return step * (c2 + c1 * (2.0 * h + step) + c0 * (3.0 * h * h + 3.0 * h * step + step * step))

    def _phi_delta(self, ta: float, tb: float) -> float:
        t = self._t
        last = len(t) - 1
        total = 0.0
        if ta < t[0]:
            upper = min(tb, t[0])
            total += self._slope * (upper - ta)
            ta = upper
            if ta >= tb:
                return total
        tb = min(tb, t[-1])
        if ta >= tb:
            return total
        i = min(bisect_right(t, ta) - 1, last - 1)
        j = min(bisect_right(t, tb) - 1, last - 1)
        if i == j:
            return total + self._cubic_delta(i, ta - t[i], tb - ta)
        if j == i + 1:
            return (
                total
                + self._cubic_delta(i, ta - t[i], t[j] - ta)
                + self._cubic_delta(j, 0.0, tb - t[j])
            )
        return total + self._phi_value(tb) - self._phi_value(ta)

    def cdf_at(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return math.exp(self._phi_value(math.log(x)))

    def ac_cdf_at(self, x: float) -> float:
        return self.cdf_at(x)

    def density_at(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        tt = math.log(x)
        return math.exp(self._phi_value(tt)) * self._phi_slope(tt) / x

    def _ac_increment(self, a: float, d: float) -> float:
        ta = math.log(a)
        if ta >= self._t[-1]:
            return 0.0
        tb = ta + math.log1p(d / a)
        return math.exp(self._phi_value(ta)) * math.expm1(self._phi_delta(ta, tb))

    def _cubic_deltas(self, i: np.ndarray, h: np.ndarray, step: np.ndarray) -> np.ndarray:
        c = self._coef_arr[i]
        return step * (c[..., 2] + c[..., 1] * (2.0 * h + step) + c[..., 0] * (3.0 * h * h + 3.0 * h * step + step * step))

    def _phi_deltas(self, ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
        t = self._t_arr
        last = t.size - 1
        below = np.where(ta < t[0], self._slope * (np.minimum(tb, t[0]) - ta), 0.0)
        sa = np.maximum(ta, t[0])
        sb = np.minimum(tb, t[-1])
        i = np.clip(np.searchsorted(t, sa, side="right") - 1, 0, last - 1)
        j = np.clip(np.searchsorted(t, sb, side="right") - 1, 0, last - 1)
        same = self._cubic_deltas(i, sa - t[i], sb - sa)
        adjacent = self._cubic_deltas(i, sa - t[i], t[j] - sa) + self._cubic_deltas(j, np.zeros_like(sb), sb - t[j])
        far = self._phi_vector(sb) - self._phi_vector(sa)
        inside = np.where(j == i, same, np.where(j == i + 1, adjacent, far))
        return below + np.where(sa < sb, inside, 0.0)

    def ac_increments(self, a: np.ndarray, d: np.ndarray) -> np.ndarray:
        """
        F(a + d) - F(a) for arrays of a > 0 and d >= 0, without cancellation.

        The vector form of `ac_increment`, evaluated panel by panel on the
        interpolant in log coordinates.
        """
        a, d = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(d, dtype=float))
        ta = np.log(a)
        tb = ta + np.log1p(d / a)
        values = np.exp(self._phi_vector(ta)) * np.expm1(self._phi_deltas(ta, tb))
        return np.where(ta >= self._t_arr[-1], 0.0, values)

    def analytic_moment(self, r: float) -> Optional[float]:
        """
        M_r of the interpolant, integrated exactly below the first knot and by
        8-point Gauss-Legendre rules on every panel above it.
        """
        t = self._t_arr
        x0 = float(self.grid[0])
        f0 = math.exp(self._phi[0])
        k = self._slope
        left = x0**r * (1.0 - r * f0 / (r + k))
        half = 0.5 * np.diff(t)
        mid = 0.5 * (t[1:] + t[:-1])
        nodes = mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]
        survival = -np.expm1(self._phi_vector(nodes))
        integrand = r * np.exp(r * nodes) * survival
        panels = (integrand * _GAUSS_WEIGHTS[None, :]).sum(axis=1) * half
        return float(left + panels.sum())


__all__ = ["TabulatedLaw"]
