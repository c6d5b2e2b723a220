import math

import numpy as np
import pytest

from wicksell_tails.laws.base import EvtClass
from wicksell_tails.evt.minstable import MinStableLaw, min_stable_cdf


def test_weibull_limit():
    law = MinStableLaw.weibull(2.0)
    assert law.cdf(1.0) == pytest.approx(1.0 - math.exp(-1.0))
    np.testing.assert_array_equal(law.cdf([-1.0, 0.0]), [0.0, 0.0])


def test_gumbel_limit():
    law = MinStableLaw.gumbel()
    assert law.cdf(0.0) == pytest.approx(1.0 - math.exp(-1.0))
    assert law.cdf(-50.0) == pytest.approx(math.exp(-50.0), rel=1e-9)
    assert law.cdf(10.0) == 1.0


def test_frechet_limit():
    law = MinStableLaw.frechet(1.0)
    assert law.cdf(-1.0) == pytest.approx(1.0 - math.exp(-1.0))
    assert law.cdf(0.5) == 1.0


def test_from_class():
    law = MinStableLaw.from_class(EvtClass.weibull(1.5))
    assert isinstance(law, MinStableLaw)
    assert law.alpha == 1.5
    assert min_stable_cdf(law, 1.0) == law.cdf(1.0)
