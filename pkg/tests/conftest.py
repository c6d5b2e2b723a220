import numpy as np
import pytest

from wicksell_tails.config.settings import GridSpec, QuadratureConfig, SamplingConfig
from wicksell_tails.config.storage import RedisConfig, StorageConfig
from wicksell_tails.laws.catalog import DiracLaw, PowerLaw, TruncRecipExpLaw
from wicksell_tails.repository.base import SingletonABCMeta
from wicksell_tails.transform.section import tabulate_section_law


def semicircle_cdf(x):
    """F^(1) of Dirac(1): 1 - sqrt(1 - x^2), written without cancellation."""
    x = np.asarray(x, dtype=float)
    return x**2 / (1.0 + np.sqrt((1.0 - x) * (1.0 + x)))


def uniform_section_cdf(x):
    """F^(1) of the uniform law on [0, 1]."""
    x = np.asarray(x, dtype=float)
    root = np.sqrt((1.0 - x) * (1.0 + x))
    return semicircle_cdf(x) + x**2 * np.log((1.0 + root) / x)


@pytest.fixture(autouse=True)
def fresh_repositories():
    yield
    SingletonABCMeta._instances.clear()


@pytest.fixture(scope="function")
def storage_config():
    return StorageConfig()


@pytest.fixture(scope="function")
def redis_storage_config():
    return RedisConfig(
        host="localhost",
        port=6379,
        db=0,
        password=None,
    )


@pytest.fixture(scope="function")
def quadrature():
    return QuadratureConfig(workers=1)


@pytest.fixture(scope="function")
def small_grid():
    return GridSpec(points=64, edge_points=8)


@pytest.fixture(scope="function")
def sampling():
    return SamplingConfig(workers=1)


@pytest.fixture(scope="session")
def dirac():
    return DiracLaw(rho=1.0)


@pytest.fixture(scope="session")
def uniform():
    return PowerLaw(alpha=1.0)


@pytest.fixture(scope="session")
def power_half():
    return PowerLaw(alpha=0.5)


@pytest.fixture(scope="session")
def trunc_recip_exp():
    return TruncRecipExpLaw()


@pytest.fixture(scope="session")
def dirac_table(dirac):
    return tabulate_section_law(dirac, 1)


@pytest.fixture(scope="session")
def uniform_table(uniform):
    return tabulate_section_law(uniform, 1)


@pytest.fixture(scope="session")
def power_half_table(power_half):
    return tabulate_section_law(power_half, 1)
