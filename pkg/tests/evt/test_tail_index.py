import math

import numpy as np
import pytest

from tests.conftest import semicircle_cdf, uniform_section_cdf
from wicksell_tails.errors import (
    DegenerateThresholdError,
    DomainError,
    InvalidParameterError,
    UnderflowError,
)
from wicksell_tails.evt.tail_index import (
    EstimationMethod,
    SlopeModel,
    local_tail_exponent,
    reciprocal_hill,
)
from wicksell_tails.laws.catalog import PowerLaw


def test_exact_power_law():
    estimate = local_tail_exponent(lambda x: x**0.5, 0.0)
    assert estimate.beta_hat == pytest.approx(0.5, rel=1e-9)
    assert estimate.method == EstimationMethod.LOCAL_EXPONENT
    assert estimate.model == SlopeModel.LOG_CORRECTED
    assert not estimate.ill_conditioned
    assert estimate.stderr == pytest.approx(0.0, abs=1e-9)
    assert [s for s, _ in estimate.slopes] == [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]


def test_shifted_endpoint():
    estimate = local_tail_exponent(lambda x: (x - 1.0) ** 3, 1.0)
    assert estimate.beta_hat == pytest.approx(3.0, rel=1e-6)


def test_semicircle_is_quadratic():
    estimate = local_tail_exponent(lambda x: float(semicircle_cdf(x)), 0.0)
    assert estimate.beta_hat == pytest.approx(2.0, abs=1e-3)


def test_log_correction_beats_plain_slope():
    cdf = lambda x: float(uniform_section_cdf(x))  # noqa: E731
    corrected = local_tail_exponent(cdf, 0.0)
    plain = local_tail_exponent(cdf, 0.0, model=SlopeModel.PLAIN)
    assert plain.model == SlopeModel.PLAIN
    assert abs(corrected.beta_hat - 2.0) < 0.05
    assert abs(corrected.beta_hat - 2.0) < abs(plain.beta_hat - 2.0)
    assert plain.beta_hat == pytest.approx(plain.slopes[-1][1])


def test_single_probe_point_falls_back_to_plain():
    estimate = local_tail_exponent(lambda x: x**2, 0.0, s_list=[1e-3])
    assert estimate.model == SlopeModel.PLAIN
    assert estimate.beta_hat == pytest.approx(2.0)


def test_non_monotone_slopes_are_flagged(caplog):
    def wobbly(x):
        exponent = 1.0 + 0.5 * (round(-math.log10(x)) % 2)
        return x**exponent

    with caplog.at_level("WARNING", logger="wicksell_tails.evt.tail_index"):
        estimate = local_tail_exponent(wobbly, 0.0)
    assert estimate.ill_conditioned
    assert "not monotone" in caplog.text


def test_underflow():
    with pytest.raises(UnderflowError) as exc_info:
        local_tail_exponent(lambda x: 0.0, 0.0)
    assert exc_info.value.s == 1e-2


def test_gumbel_tail_underflows():
    with pytest.raises(UnderflowError):
        local_tail_exponent(lambda x: math.exp(-1.0 / x), 0.0)


@pytest.mark.parametrize("kwargs", [{"ratio": 1.0}, {"s_list": []}, {"s_list": [-1e-3]}])
def test_invalid_arguments(kwargs):
    with pytest.raises(InvalidParameterError):
        local_tail_exponent(lambda x: x, 0.0, **kwargs)


def test_reciprocal_hill_on_power_law():
    samples = PowerLaw(alpha=1.5).sample(20_000, seed=4)
    estimate = reciprocal_hill(samples, 0.0, 2_000)
    assert estimate.method == EstimationMethod.RECIPROCAL_HILL
    assert estimate.k == 2_000
    assert estimate.beta_hat == pytest.approx(1.5, abs=0.15)
    assert estimate.stderr == pytest.approx(estimate.beta_hat / math.sqrt(2_000))


def test_reciprocal_hill_with_endpoint():
    samples = 0.5 + PowerLaw(alpha=2.0).sample(20_000, seed=6)
    assert reciprocal_hill(samples, 0.5, 2_000).beta_hat == pytest.approx(2.0, abs=0.2)


def test_reciprocal_hill_degenerate():
    with pytest.raises(DegenerateThresholdError):
        reciprocal_hill(np.full(10, 0.5), 0.0, 3)


@pytest.mark.parametrize(
    "samples, eta, k, error",
    [
        ([0.1, 0.2, 0.3], 0.0, 3, DomainError),
        ([0.1, 0.2, 0.3], 0.15, 1, DomainError),
        ([0.1, 0.2, 0.3], 0.0, 0, InvalidParameterError),
    ],
)
def test_reciprocal_hill_arguments(samples, eta, k, error):
    with pytest.raises(error):
        reciprocal_hill(samples, eta, k)


@pytest.mark.parametrize("factor, shift", [(2.0, 0.0), (3.7, 0.0), (1.0, 0.25), (0.5, 1.0)])
def test_reciprocal_hill_is_scale_and_shift_equivariant(factor, shift):
    sample = PowerLaw(alpha=1.5).sample(2_000, seed=17)
    base = reciprocal_hill(sample, 0.0, 200)
    moved = reciprocal_hill(factor * sample + shift, shift, 200)
    assert moved.beta_hat == pytest.approx(base.beta_hat, rel=1e-9)
    assert moved.stderr == pytest.approx(base.stderr, rel=1e-9)
