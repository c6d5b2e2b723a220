import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple, Union

import numpy as np

from ..config.settings import GridSpec, QuadratureConfig
from ..config.types import ArrayLike
from ..errors import (
    DomainError,
    InvalidParameterError,
    QuadratureError,
    SingularDensityError,
    TabulationError,
)
from ..laws.base import RadiusLaw, as_array, restore
from ..laws.domains import section_domain
from ..laws.tabulated import TabulatedLaw
from .moments import moment
from .quadrature import integrate_segments, segment_breaks
from .section_law import MASS_TOLERANCE, SectionLaw

logger = logging.getLogger(__name__)

_PANEL_NODES, _PANEL_WEIGHTS = np.polynomial.legendre.leggauss(10)
MAX_REFINEMENTS = 1


def codimension(n: int, k: int) -> int:
    """
    The codimension r = n - k of a k-dimensional section of n-space.

    Raises:
        InvalidParameterError: Unless 1 <= k <= n - 1.
    """
    if int(n) != n or int(k) != k or not 1 <= k <= n - 1:
        raise InvalidParameterError(f"need integers 1 <= k <= n - 1, got n={n}, k={k}")
    return int(n) - int(k)


class WicksellIntegrator:
    """
    Evaluates F^(r) and f^(r) of one radius law.

    M_r, the support scale and the quadrature breakpoints of the law are
    computed once; each evaluation then integrates over s = sqrt(u^2 - x^2),
    which leaves a bounded, smooth integrand for every r. The CDF is integrated
    in the difference form

        F^(r)(x) = (r / M_r) * int_0^inf s^(r-1) [F(sqrt(x^2 + s^2)) - F(s)] ds,

    with atoms of F contributing closed-form chords.
    """

    def __init__(self, law: RadiusLaw, r: int, config: Optional[QuadratureConfig] = None):
        if int(r) != r or r < 1:
            raise InvalidParameterError(f"codimension r must be a positive integer, got {r}")
        self._law = law
        self._r = int(r)
        self._config = config or QuadratureConfig()
        self._moment = moment(law, self._r, self._config)
        self._upper = law.scale(self._config.tail_probability)
        self._bounded = law.upper_support is not None
        points = {law.eta, self._upper, *law.kinks}
        self._kinks = sorted(p for p in points if 0.0 < p <= self._upper)

    @property
    def law(self) -> RadiusLaw:
        return self._law

    @property
    def r(self) -> int:
        return self._r

    @property
    def moment(self) -> float:
        return self._moment

    @property
    def upper(self) -> float:
        return self._upper

    @property
    def config(self) -> QuadratureConfig:
        return self._config

    def _breaks(self, x: float, end: float) -> List[float]:
        images = []
        for b in self._kinks:
            images.append(b)
            if b > x:
                images.append(math.sqrt((b - x) * (b + x)))
        return segment_breaks(0.0, end, x, self._config.segment_ratio, images)

    def _chord(self, a: float, x: float) -> float:
        # a^r - (a^2 - x^2)^(r/2), the weight an atom at a gives to F^(r)(x)
        if a <= x:
            return a**self._r
        q = (x / a) ** 2
        return -(a**self._r) * math.expm1(0.5 * self._r * math.log1p(-q))

    def cdf(self, x: float) -> float:
        """
        F^(r)(x), clamped to [0, 1].

        Raises:
            DomainError: If x <= 0.
            QuadratureError: If an integral is not finite.
        """
        if not x > 0.0:
            raise DomainError(f"section radius must be positive, got {x!r}")
        if self._bounded and x >= self._upper:
            return 1.0
        law, r = self._law, self._r
        total = sum(w * self._chord(a, x) for a, w in law.atoms) / self._moment
        if law.has_density:
            x2 = x * x

            def integrand(s: float) -> float:
                u = math.hypot(x, s)
                return s ** (r - 1) * law.ac_increment(s, x2 / (u + s))

            body = integrate_segments(integrand, self._breaks(x, self._upper), self._config, x)
            total += r * body / self._moment
        return min(max(total, 0.0), 1.0)

    def pdf(self, x: float) -> float:
        """
        f^(r)(x) = (x r / M_r) * int_x^inf (u^2 - x^2)^((r-2)/2) dF(u).

        Raises:
            DomainError: If x <= 0.
            SingularDensityError: If r = 1 and F has an atom exactly at x.
        """
        if not x > 0.0:
            raise DomainError(f"section radius must be positive, got {x!r}")
        if self._bounded and x > self._upper:
            return 0.0
        law, r = self._law, self._r
        total = 0.0
        for a, w in law.atoms:
            if a > x:
                total += w * ((a - x) * (a + x)) ** (0.5 * (r - 2))
            elif a == x:
                if r == 1:
                    raise SingularDensityError(x)
                if r == 2:
                    total += w
        if law.has_density and x < self._upper:
            end = math.sqrt((self._upper - x) * (self._upper + x))

            def integrand(s: float) -> float:
                u = math.hypot(x, s)
                return s ** (r - 1) * law.density_at(u) / u

            total += integrate_segments(integrand, self._breaks(x, end), self._config, x)
        return x * r * total / self._moment


class TableIntegrator(WicksellIntegrator):
    """
    F^(r) and f^(r) of a tabulated law by fixed Gauss-Legendre panels.

    A table is piecewise smooth between its knots, so the s-axis is cut at
    every knot and at every knot image sqrt(b^2 - x^2), and a fixed 10-point
    rule is applied on each panel.
    """

    def __init__(self, law: TabulatedLaw, r: int, config: Optional[QuadratureConfig] = None):
        super().__init__(law, r, config)
        self._knots = law.grid[law.grid <= self._upper]

    def _panels(self, x: float, end: float) -> Tuple[np.ndarray, np.ndarray]:
        above = self._knots[self._knots > x]
        images = np.sqrt((above - x) * (above + x))
        points = np.concatenate([[0.0, x, end], self._knots, images])
        breaks = np.unique(points[(points >= 0.0) & (points <= end)])
        half = 0.5 * np.diff(breaks)
        mid = 0.5 * (breaks[1:] + breaks[:-1])
        s = mid[:, None] + half[:, None] * _PANEL_NODES[None, :]
        w = half[:, None] * _PANEL_WEIGHTS[None, :]
        return s.ravel(), w.ravel()

    def _integral(self, values: np.ndarray, weights: np.ndarray, x: float) -> float:
        total = float(np.dot(weights, values))
        if not math.isfinite(total):
            raise QuadratureError("panel rule returned a non-finite value", abscissa=x)
        return total

    def cdf(self, x: float) -> float:
        if not x > 0.0:
            raise DomainError(f"section radius must be positive, got {x!r}")
        if x >= self._upper:
            return 1.0
        r = self._r
        s, w = self._panels(x, self._upper)
        u = np.hypot(x, s)
        values = s ** (r - 1) * self._law.ac_increments(s, x * x / (u + s))
        total = r * self._integral(values, w, x) / self._moment
        return min(max(total, 0.0), 1.0)

    def pdf(self, x: float) -> float:
        if not x > 0.0:
            raise DomainError(f"section radius must be positive, got {x!r}")
        if x >= self._upper:
            return 0.0
        r = self._r
        s, w = self._panels(x, math.sqrt((self._upper - x) * (self._upper + x)))
        u = np.hypot(x, s)
        values = s ** (r - 1) * self._law.pdf(u) / u
        return x * r * self._integral(values, w, x) / self._moment


def integrator_for(law: RadiusLaw, r: int, config: Optional[QuadratureConfig] = None) -> WicksellIntegrator:
    """The panel integrator for tabulated laws, the adaptive one otherwise."""
    if isinstance(law, TabulatedLaw):
        return TableIntegrator(law, r, config)
    return WicksellIntegrator(law, r, config)


def build_grid(scale: float, spec: GridSpec) -> np.ndarray:
    """
    Log-spaced abscissae from `grid_min * scale` to `scale`, refined toward `scale`.

    Two layers are merged into the log body. The shoulder adds
    `shoulder_points` abscissae scale * (1 - span * (k / K)^2), k = 1..K, which
    resolve densities that vanish like sqrt(scale - x). The edge adds
    `edge_points` abscissae scale * (1 - g) with gaps g decreasing
    geometrically from the last log gap to `edge_gap_min`.
    """
    body = np.geomspace(spec.grid_min * scale, scale, spec.points)
    layers = [body]
    if spec.shoulder_points > 0:
        k = np.arange(1, spec.shoulder_points + 1) / spec.shoulder_points
        layers.append(scale * (1.0 - spec.shoulder_span * k**2))
    first_gap = 1.0 - body[-2] / body[-1]
    if spec.edge_points > 0 and first_gap > spec.edge_gap_min:
        gaps = np.geomspace(first_gap, spec.edge_gap_min, spec.edge_points + 1)[1:]
        layers.append(scale * (1.0 - gaps))
    return np.unique(np.concatenate(layers))


def _evaluate(integrator: WicksellIntegrator, x: float) -> Tuple[float, float]:
    try:
        cdf = integrator.cdf(x)
    except QuadratureError as e:
        raise TabulationError(f"section cdf failed: {e}", abscissa=x) from e
    try:
        pdf = integrator.pdf(x)
    except SingularDensityError:
        pdf = math.inf
    except QuadratureError as e:
        raise TabulationError(f"section pdf failed: {e}", abscissa=x) from e
    return cdf, pdf


def _tabulate(
    integrator: WicksellIntegrator,
    grid: np.ndarray,
    workers: int,
) -> Tuple[np.ndarray, np.ndarray]:
    abscissae = [float(x) for x in grid]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda x: _evaluate(integrator, x), abscissae))
    else:
        results = [_evaluate(integrator, x) for x in abscissae]
    cdf = np.array([c for c, _ in results])
    pdf = np.array([p for _, p in results])
    return np.maximum.accumulate(np.clip(cdf, 0.0, 1.0)), pdf


def _report(table: SectionLaw) -> SectionLaw:
    for problem in table.violations():
        logger.warning("section table %s: %s", table.source, problem)
    return table


def tabulate_section_law(
    law: RadiusLaw,
    r: int,
    grid_spec: Optional[GridSpec] = None,
    config: Optional[QuadratureConfig] = None,
    dims: Optional[Tuple[int, int]] = None,
) -> SectionLaw:
    """
    Tabulate F^(r) on a log-spaced grid.

    A table whose trapezoid mass misses 1 by more than `MASS_TOLERANCE` is
    rebuilt once, with twice the log and shoulder points.

    Args:
        law (RadiusLaw): Radius law to section.
        r (int): Codimension. Ignored in favour of n - k when `dims` is given.
        grid_spec (Optional[GridSpec]): Grid parameters; defaults to 512 points from 1e-7 * scale.
        config (Optional[QuadratureConfig]): Quadrature settings.
        dims (Optional[Tuple[int, int]]): (n, k) of the section; only n - k enters the table.

    Raises:
        TabulationError: With the offending abscissa when an integral fails.

    Examples:
        >>> table = tabulate_section_law(DiracLaw(rho=1.0), 1)
        >>> float(abs(table.cdf_values - (1 - np.sqrt(1 - table.grid**2))).max()) < 1e-8
        True
    """
    if dims is not None:
        r = codimension(*dims)
    grid_spec = grid_spec or GridSpec()
    config = config or QuadratureConfig()
    integrator = integrator_for(law, r, config)
    for attempt in range(MAX_REFINEMENTS + 1):
        grid = build_grid(integrator.upper, grid_spec)
        logger.debug("tabulating %s with r=%d on %d abscissae", law.label, r, grid.size)
        cdf, pdf = _tabulate(integrator, grid, config.workers)
        table = SectionLaw(
            r=integrator.r,
            moment=integrator.moment,
            grid=grid,
            cdf_values=cdf,
            pdf_values=pdf,
            source=f"{law.label} |> W{integrator.r}",
            grid_spec=grid_spec,
            evt_class=section_domain(law.evt_class, law.eta, integrator.r),
            dims=tuple(dims) if dims is not None else None,
        )
        if attempt == MAX_REFINEMENTS or table.mass_defect() <= MASS_TOLERANCE:
            break
        grid_spec = grid_spec.model_copy(
            update={"points": 2 * grid_spec.points, "shoulder_points": 2 * grid_spec.shoulder_points}
        )
        logger.info(
            "mass of %s is off by %.3g; retabulating on %d log points",
            table.source,
            table.mass_defect(),
            grid_spec.points,
        )
    return _report(table)


def iterate_section(sl: SectionLaw, config: Optional[QuadratureConfig] = None) -> SectionLaw:
    """
    Section a tabulated section law once more (r = 1), giving F^(r+1).

    The table is interpolated monotonically, its own M_1 is taken from the
    interpolant, and the transform is applied by panel quadrature at the same
    abscissae.

    Raises:
        InvalidTableError: If `sl` is structurally invalid (e.g. a 1-point grid).
    """
    sl.ensure_valid()
    config = config or QuadratureConfig()
    integrator = TableIntegrator(sl.law, 1, config)
    cdf, pdf = _tabulate(integrator, sl.grid, config.workers)
    return _report(
        SectionLaw(
            r=sl.r + 1,
            moment=integrator.moment,
            grid=sl.grid.copy(),
            cdf_values=cdf,
            pdf_values=pdf,
            source=f"{sl.source} |> W1",
            grid_spec=sl.grid_spec,
            evt_class=section_domain(sl.evt_class, 0.0, 1),
        )
    )


def section_cdf(
    law: RadiusLaw, r: int, x: ArrayLike, config: Optional[QuadratureConfig] = None
) -> Union[float, np.ndarray]:
    """
    F^(r)(x) for one or several abscissae.

    Examples:
        >>> round(section_cdf(DiracLaw(rho=1.0), 1, 0.6), 12)
        0.2
    """
    arr, scalar = as_array(x)
    integrator = integrator_for(law, r, config)
    values = np.array([integrator.cdf(float(v)) for v in arr.ravel()]).reshape(arr.shape)
    return restore(values, scalar)


def section_pdf(
    law: RadiusLaw, r: int, x: ArrayLike, config: Optional[QuadratureConfig] = None
) -> Union[float, np.ndarray]:
    """f^(r)(x) for one or several abscissae."""
    arr, scalar = as_array(x)
    integrator = integrator_for(law, r, config)
    values = np.array([integrator.pdf(float(v)) for v in arr.ravel()]).reshape(arr.shape)
    return restore(values, scalar)


__all__ = [
    "WicksellIntegrator",
    "TableIntegrator",
    "integrator_for",
    "codimension",
    "build_grid",
    "tabulate_section_law",
    "iterate_section",
    "section_cdf",
    "section_pdf",
]
