import math

import pytest

from wicksell_tails.errors import DomainError, InvalidParameterError
from wicksell_tails.evt.probes import ProbePoint, gumbel_decay_check, rv_exponent_probe
from wicksell_tails.laws.catalog import PowerLaw, WeibullLaw


def test_rv_probe_at_zero():
    probe = rv_exponent_probe(lambda t: t**1.5)
    assert probe.at == ProbePoint.ZERO
    assert probe.rho == pytest.approx(1.5)
    assert len(probe.sequence) == 6


def test_rv_probe_at_infinity():
    probe = rv_exponent_probe(lambda t: t**-2 * math.log(t), at="infinity")
    assert probe.rho == pytest.approx(-2.0, abs=0.1)


def test_rv_probe_custom_points():
    probe = rv_exponent_probe(lambda t: t**3, t_list=[0.5, 0.1], ratio=3.0)
    assert [t for t, _ in probe.sequence] == [0.5, 0.1]
    assert probe.rho == pytest.approx(3.0)


def test_rv_probe_requires_positive_function():
    with pytest.raises(DomainError):
        rv_exponent_probe(lambda t: 0.0)
    with pytest.raises(InvalidParameterError):
        rv_exponent_probe(lambda t: t, ratio=0.5)


def test_gumbel_decay_accepts_exponential_tail():
    result = gumbel_decay_check(lambda x: math.exp(-1.0 / x), 0.0)
    assert result.consistent
    assert result.verdict == "consistent-with-Gumbel"
    assert result.max_value < 1e-30
    assert result.max_increase == 0.0
    assert [n for n, _ in result.values] == [1, 2, 3, 4]


def test_gumbel_decay_rejects_power_tail():
    result = gumbel_decay_check(lambda x: x**2, 0.0)
    assert not result.consistent
    assert result.verdict == "inconsistent-with-Gumbel"
    assert result.max_increase > 0.0


def test_gumbel_decay_on_shifted_endpoint():
    assert gumbel_decay_check(lambda x: math.exp(-1.0 / (x - 0.5)) if x > 0.5 else 0.0, 0.5).consistent


def test_gumbel_decay_arguments():
    with pytest.raises(InvalidParameterError):
        gumbel_decay_check(lambda x: x, 0.0, n_max=0)
    with pytest.raises(InvalidParameterError):
        gumbel_decay_check(lambda x: x, 0.0, s=0.0)


@pytest.mark.parametrize(
    "first, second, expected",
    [
        (PowerLaw(alpha=1.5), PowerLaw(alpha=0.5), 0.5),
        (WeibullLaw(alpha=2.0, lam=1.0), PowerLaw(alpha=1.0), 1.0),
    ],
)
def test_sum_of_regular_variations_keeps_smaller_index(first, second, expected):
    probe = rv_exponent_probe(lambda t: first.cdf(t) + second.cdf(t), t_list=[1e-2, 1e-3, 1e-4])
    assert probe.sequence[-1][0] == 1e-4
    assert probe.rho == pytest.approx(expected, abs=0.02)
