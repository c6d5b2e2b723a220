import math

import numpy as np
import pytest

from tests.conftest import semicircle_cdf, uniform_section_cdf
from wicksell_tails.config.settings import GridSpec, QuadratureConfig
from wicksell_tails.errors import (
    DomainError,
    InvalidParameterError,
    InvalidTableError,
    QuadratureError,
    SingularDensityError,
    TabulationError,
)
from wicksell_tails.laws.base import EvtClass
from wicksell_tails.laws.catalog import DiracLaw, PowerLaw
from wicksell_tails.laws.composite import ScaledLaw, ShiftedLaw
from wicksell_tails.transform.section import (
    TableIntegrator,
    WicksellIntegrator,
    build_grid,
    codimension,
    integrator_for,
    iterate_section,
    section_cdf,
    section_pdf,
    tabulate_section_law,
)
from wicksell_tails.transform.section_law import SectionLaw

ABSCISSAE = np.array([1e-6, 1e-4, 1e-2, 0.1, 0.5, 0.9, 0.999])


def test_codimension():
    assert codimension(3, 2) == 1
    assert codimension(5, 2) == 3


@pytest.mark.parametrize("n, k", [(3, 3), (3, 0), (2, 5), (3.5, 1)])
def test_codimension_rejects_invalid_dimensions(n, k):
    with pytest.raises(InvalidParameterError):
        codimension(n, k)


def test_dirac_section_is_semicircle(dirac, quadrature):
    np.testing.assert_allclose(section_cdf(dirac, 1, ABSCISSAE, quadrature), semicircle_cdf(ABSCISSAE), rtol=1e-12)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_dirac_higher_codimension(dirac, quadrature, r):
    expected = -np.expm1(0.5 * r * np.log1p(-(ABSCISSAE**2)))
    np.testing.assert_allclose(section_cdf(dirac, r, ABSCISSAE, quadrature), expected, rtol=1e-12)


def test_dirac_density(dirac, quadrature):
    x = 0.6
    assert section_pdf(dirac, 1, x, quadrature) == pytest.approx(x / math.sqrt(1.0 - x * x))
    assert section_pdf(dirac, 2, x, quadrature) == pytest.approx(2.0 * x)


def test_dirac_density_singular_at_atom(dirac, quadrature):
    with pytest.raises(SingularDensityError):
        section_pdf(dirac, 1, 1.0, quadrature)
    assert section_pdf(dirac, 2, 1.0, quadrature) == pytest.approx(2.0)
    assert section_pdf(dirac, 1, 1.5, quadrature) == 0.0


def test_uniform_section_cdf(uniform, quadrature):
    np.testing.assert_allclose(
        section_cdf(uniform, 1, ABSCISSAE, quadrature), uniform_section_cdf(ABSCISSAE), rtol=1e-8
    )


def test_uniform_section_pdf(uniform, quadrature):
    x = np.array([1e-3, 0.2, 0.7])
    expected = 2.0 * x * np.arccosh(1.0 / x)
    np.testing.assert_allclose(section_pdf(uniform, 1, x, quadrature), expected, rtol=1e-7)


def test_small_abscissa_is_quadratic(quadrature):
    law = PowerLaw(alpha=2.0)
    t = 1e-5
    # F^(1)(t) / t^2 tends to E(1/xi) / (2 M_1) = 1.5
    assert section_cdf(law, 1, t, quadrature) / t**2 == pytest.approx(1.5, rel=1e-3)


def test_section_cdf_domain(uniform, quadrature):
    with pytest.raises(DomainError):
        section_cdf(uniform, 1, 0.0, quadrature)
    with pytest.raises(DomainError):
        section_pdf(uniform, 1, -1.0, quadrature)


def test_section_cdf_is_one_beyond_support(uniform, quadrature):
    assert section_cdf(uniform, 1, 1.0, quadrature) == 1.0
    assert section_cdf(uniform, 2, 3.0, quadrature) == 1.0


def test_integrator_rejects_bad_codimension(uniform):
    with pytest.raises(InvalidParameterError):
        WicksellIntegrator(uniform, 0)


def test_integrator_properties(power_half, quadrature):
    integrator = WicksellIntegrator(power_half, 2, quadrature)
    assert integrator.r == 2
    assert integrator.moment == pytest.approx(0.2)
    assert integrator.upper == 1.0
    assert integrator.law is power_half


def test_build_grid():
    spec = GridSpec(grid_min=1e-4, points=20, edge_points=5, shoulder_points=0)
    grid = build_grid(2.0, spec)
    assert grid[0] == pytest.approx(2e-4)
    assert grid[-1] == 2.0
    assert grid.size == 25
    assert np.all(np.diff(grid) > 0.0)
    assert 2.0 - grid[-2] == pytest.approx(2.0 * spec.edge_gap_min, rel=1e-3)


def test_build_grid_without_refinement():
    grid = build_grid(1.0, GridSpec(grid_min=1e-2, points=3, edge_points=0, shoulder_points=0))
    np.testing.assert_allclose(grid, [1e-2, 1e-1, 1.0])


def test_build_grid_shoulder():
    spec = GridSpec(grid_min=1e-4, points=20, edge_points=0, shoulder_points=8, shoulder_span=0.5)
    grid = build_grid(2.0, spec)
    shoulder = 2.0 * (1.0 - 0.5 * (np.arange(1, 9) / 8) ** 2)
    assert np.all(np.isin(shoulder, grid))
    assert np.all(np.diff(grid) > 0.0)
    assert grid[-1] == 2.0
    # gaps below the top shrink quadratically toward it
    assert 2.0 - grid[-2] == pytest.approx(2.0 * 0.5 / 64)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.5])
@pytest.mark.parametrize("eta", [0.0, 0.5])
def test_default_matrix_tables_are_valid(alpha, eta, quadrature):
    base = PowerLaw(alpha=alpha)
    law = ShiftedLaw(inner=base, eta0=eta) if eta > 0.0 else base
    table = tabulate_section_law(law, 1, GridSpec(), quadrature)
    assert table.ensure_valid() is table


def test_mass_miss_triggers_one_refinement(uniform, quadrature, caplog):
    coarse = GridSpec(grid_min=1e-3, points=8, edge_points=0, shoulder_points=0)
    with caplog.at_level("INFO", logger="wicksell_tails.transform.section"):
        table = tabulate_section_law(uniform, 1, coarse, quadrature)
    assert table.grid_spec.points == 16
    assert "retabulating" in caplog.text


@pytest.mark.parametrize("factor", [0.5, 2.0])
@pytest.mark.parametrize("r", [1, 2])
def test_section_commutes_with_dilation(power_half, quadrature, factor, r):
    x = np.array([1e-3, 0.1, 0.5, 0.9])
    scaled = ScaledLaw(inner=power_half, factor=factor)
    np.testing.assert_allclose(
        section_cdf(scaled, r, factor * x, quadrature), section_cdf(power_half, r, x, quadrature), atol=1e-9
    )


@pytest.mark.parametrize("law_name", ["uniform", "power_half"])
@pytest.mark.parametrize("r", [1, 2])
def test_density_is_derivative_of_cdf(law_name, r, quadrature, request):
    law = request.getfixturevalue(law_name)
    for x in [1e-3, 0.1, 0.5, 0.9]:
        step = 1e-4 * x
        slope = (section_cdf(law, r, x + step, quadrature) - section_cdf(law, r, x - step, quadrature)) / (2.0 * step)
        assert slope == pytest.approx(section_pdf(law, r, x, quadrature), rel=1e-3)


@pytest.mark.parametrize("x", [1e-3, 0.1, 0.5, 0.9])
def test_table_integrator_matches_adaptive(uniform_table, quadrature, x):
    law = uniform_table.law
    panels = TableIntegrator(law, 1, quadrature)
    adaptive = WicksellIntegrator(law, 1, quadrature)
    assert panels.moment == adaptive.moment
    assert panels.cdf(x) == pytest.approx(adaptive.cdf(x), rel=1e-6)
    assert panels.pdf(x) == pytest.approx(adaptive.pdf(x), rel=1e-6)


def test_integrator_for_picks_panels_for_tables(uniform, uniform_table, quadrature):
    assert isinstance(integrator_for(uniform_table.law, 2, quadrature), TableIntegrator)
    assert type(integrator_for(uniform, 2, quadrature)) is WicksellIntegrator


def test_table_integrator_domain(uniform_table, quadrature):
    integrator = TableIntegrator(uniform_table.law, 1, quadrature)
    with pytest.raises(DomainError):
        integrator.cdf(0.0)
    assert integrator.cdf(1.0) == 1.0
    assert integrator.pdf(1.0) == 0.0


def test_dirac_table(dirac_table):
    assert dirac_table.r == 1
    assert dirac_table.source == "dirac(rho=1) |> W1"
    assert dirac_table.evt_class == EvtClass.weibull(2.0)
    np.testing.assert_allclose(dirac_table.cdf_values, semicircle_cdf(dirac_table.grid), rtol=1e-9, atol=1e-15)
    assert math.isinf(dirac_table.pdf_values[-1])
    assert dirac_table.violations() == []


def test_uniform_table(uniform_table):
    assert uniform_table.moment == 0.5
    assert uniform_table.evt_class == EvtClass.weibull(2.0)
    assert uniform_table.cdf_values[-1] == 1.0
    np.testing.assert_allclose(
        uniform_table.cdf_values, uniform_section_cdf(uniform_table.grid), rtol=1e-7, atol=1e-15
    )
    assert uniform_table.mass() == pytest.approx(1.0, abs=1e-3)


def test_power_half_table_declares_predicted_class(power_half_table):
    assert power_half_table.evt_class == EvtClass.weibull(1.5)
    assert np.all(np.diff(power_half_table.cdf_values) >= 0.0)
    assert power_half_table.ensure_valid() is power_half_table


def test_dims_only_enter_through_codimension(uniform, small_grid, quadrature):
    first = tabulate_section_law(uniform, 7, small_grid, quadrature, dims=(3, 2))
    second = tabulate_section_law(uniform, 7, small_grid, quadrature, dims=(4, 3))
    assert first.r == second.r == 1
    assert first.dims == (3, 2)
    np.testing.assert_array_equal(first.cdf_values, second.cdf_values)
    np.testing.assert_array_equal(first.pdf_values, second.pdf_values)


def test_threads_do_not_change_the_table(power_half, small_grid):
    serial = tabulate_section_law(power_half, 1, small_grid, QuadratureConfig(workers=1))
    threaded = tabulate_section_law(power_half, 1, small_grid, QuadratureConfig(workers=4))
    np.testing.assert_array_equal(serial.cdf_values, threaded.cdf_values)


def test_tabulation_error_carries_abscissa(uniform, small_grid, quadrature, monkeypatch):
    def failing(self, x):
        raise QuadratureError("boom")

    monkeypatch.setattr(WicksellIntegrator, "cdf", failing)
    with pytest.raises(TabulationError) as exc_info:
        tabulate_section_law(uniform, 1, small_grid, quadrature)
    assert exc_info.value.abscissa == pytest.approx(1e-7)


def test_tabulation_warns_on_invalid_table(uniform, quadrature, caplog):
    coarse = GridSpec(grid_min=0.5, points=2, edge_points=0, shoulder_points=0)
    with caplog.at_level("WARNING", logger="wicksell_tails.transform.section"):
        table = tabulate_section_law(uniform, 1, coarse, quadrature)
    assert table.violations()
    assert "first cdf value" in caplog.text


def test_iterate_section_matches_direct_table(dirac_table, quadrature):
    iterated = iterate_section(dirac_table, quadrature)
    assert iterated.r == 2
    assert iterated.source == "dirac(rho=1) |> W1 |> W1"
    assert iterated.evt_class == EvtClass.weibull(2.0)
    assert iterated.moment == pytest.approx(math.pi / 4.0, rel=1e-4)
    np.testing.assert_allclose(iterated.cdf_values, dirac_table.grid**2, atol=1e-3)


def test_iterated_uniform_table_matches_direct_codimension_two(uniform, uniform_table, quadrature):
    direct = tabulate_section_law(uniform, 2, uniform_table.grid_spec, quadrature)
    iterated = iterate_section(uniform_table, quadrature)
    assert iterated.moment == pytest.approx(uniform_table.law.analytic_moment(1))
    assert np.max(np.abs(direct.cdf_values - iterated.cdf(direct.grid))) < 1e-3


def test_iterate_section_rejects_invalid_table(quadrature):
    table = SectionLaw(
        r=1,
        moment=1.0,
        grid=np.array([0.5]),
        cdf_values=np.array([0.5]),
        pdf_values=np.array([1.0]),
        source="single",
        evt_class=EvtClass.weibull(2.0),
    )
    with pytest.raises(InvalidTableError):
        iterate_section(table, quadrature)
