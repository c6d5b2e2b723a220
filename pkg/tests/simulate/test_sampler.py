import numpy as np
import pytest
from scipy import stats

from tests.conftest import semicircle_cdf, uniform_section_cdf
from tests.test_doubles.laws import HeavyTailLaw
from wicksell_tails.config.settings import SamplingConfig
from wicksell_tails.errors import DivergentMomentError, InvalidParameterError
from wicksell_tails.evt.block_minima import ks_distance
from wicksell_tails.laws.catalog import DiracLaw, PowerLaw, WeibullLaw
from wicksell_tails.laws.composite import ShiftedLaw
from wicksell_tails.simulate.sampler import (
    SampleMode,
    SectionSample,
    SizeBiasedSampler,
    law_spec_of,
    sample_section_radii,
    sample_size_biased,
)
from wicksell_tails.simulate.streams import child_rng
from wicksell_tails.transform.moments import moment
from wicksell_tails.transform.section import section_cdf, tabulate_section_law

KS_LEVEL = 1e-3


def test_sample_mode_values():
    assert SampleMode.values() == ["analytic", "geometric3d"]


def test_sampler_strategies(dirac, power_half, trunc_recip_exp, sampling):
    assert SizeBiasedSampler(dirac, 1, sampling).strategy == "atoms"
    assert SizeBiasedSampler(power_half, 2, sampling).strategy == "closed-form"
    assert SizeBiasedSampler(trunc_recip_exp, 1, sampling).strategy == "tabulated"


def test_sampler_rejects_bad_codimension(uniform):
    with pytest.raises(InvalidParameterError):
        SizeBiasedSampler(uniform, 0)


def test_size_biased_power_law_mean(power_half, sampling):
    draws = sample_size_biased(power_half, 2, 50_000, seed=11, config=sampling)
    # u^2 * u^(-1/2) du normalises to a power law with exponent 2.5 and mean 5/7
    assert draws.mean() == pytest.approx(5.0 / 7.0, abs=0.005)
    assert np.all((draws > 0.0) & (draws <= 1.0))


def test_size_biased_dirac():
    assert sample_size_biased(DiracLaw(rho=1.0), 2, 3, seed=7).tolist() == [1.0, 1.0, 1.0]


def test_tabulated_size_biased_mean(trunc_recip_exp, sampling):
    draws = sample_size_biased(trunc_recip_exp, 1, 50_000, seed=5, config=sampling)
    expected = moment(trunc_recip_exp, 2) / moment(trunc_recip_exp, 1)
    assert draws.mean() == pytest.approx(expected, abs=0.005)
    atom_share = np.mean(draws == 1.0)
    assert atom_share == pytest.approx((1.0 - np.exp(-1.0)) / moment(trunc_recip_exp, 1), abs=0.01)


def test_tabulated_sampler_on_shifted_law(sampling):
    law = ShiftedLaw(inner=PowerLaw(alpha=2.0), eta0=0.5)
    sampler = SizeBiasedSampler(law, 1, sampling)
    assert sampler.strategy == "tabulated"
    draws = sampler.sample(20_000, child_rng(0, 4))
    assert draws.min() >= 0.5
    assert draws.max() <= 1.5


@pytest.mark.parametrize("r", [1, 2, 3])
def test_trunc_recip_exp_section_radii_match_table(trunc_recip_exp, r, sampling, small_grid, quadrature):
    table = tabulate_section_law(trunc_recip_exp, r, small_grid, quadrature)
    sample = sample_section_radii(trunc_recip_exp, r, 5_000, seed=21, config=sampling)
    assert np.all(np.isfinite(sample.values))
    assert ks_distance(sample.values, table.cdf) < 0.03


def test_divergent_size_biased_law(sampling):
    with pytest.raises(DivergentMomentError):
        sample_size_biased(HeavyTailLaw(), 1, 10, seed=1, config=sampling)


def test_dirac_section_radii_follow_semicircle(dirac, sampling):
    sample = sample_section_radii(dirac, 1, 20_000, seed=42, config=sampling)
    assert sample.n == 20_000
    assert sample.mode == SampleMode.ANALYTIC
    assert sample.law_spec == {"kind": "dirac", "rho": 1.0}
    assert stats.kstest(sample.values, semicircle_cdf).pvalue > KS_LEVEL


def test_uniform_section_radii(uniform, sampling):
    sample = sample_section_radii(uniform, 1, 20_000, seed=3, config=sampling)
    assert stats.kstest(sample.values, uniform_section_cdf).pvalue > KS_LEVEL


def test_weibull_section_radii_match_transform(sampling, quadrature):
    law = WeibullLaw(alpha=1.5, lam=1.0)
    sample = sample_section_radii(law, 2, 2_000, seed=9, config=sampling)
    pvalue = stats.kstest(sample.values, lambda x: section_cdf(law, 2, x, quadrature)).pvalue
    assert pvalue > KS_LEVEL


def test_section_radii_are_reproducible(power_half):
    config = SamplingConfig(chunk_size=1000, workers=1)
    threaded = SamplingConfig(chunk_size=1000, workers=4)
    first = sample_section_radii(power_half, 1, 5_500, seed=8, config=config)
    second = sample_section_radii(power_half, 1, 5_500, seed=8, config=threaded)
    np.testing.assert_array_equal(first.values, second.values)


def test_empty_sample(uniform, sampling):
    sample = sample_section_radii(uniform, 1, 0, seed=1, config=sampling)
    assert sample.n == 0
    assert sample.values.size == 0


@pytest.mark.parametrize("n", [-1, 2.5])
def test_invalid_sample_size(uniform, n):
    with pytest.raises(InvalidParameterError):
        sample_section_radii(uniform, 1, n, seed=1)


def test_law_spec_of_tabulated(uniform_table):
    assert law_spec_of(uniform_table.law) == {"kind": "tabulated", "source": uniform_table.source}


def test_section_sample_is_frozen(uniform, sampling):
    sample = sample_section_radii(uniform, 1, 10, seed=1, config=sampling)
    assert isinstance(sample, SectionSample)
    with pytest.raises(ValueError):
        sample.seed = 2
