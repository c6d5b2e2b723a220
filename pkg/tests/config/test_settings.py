import pydantic
import pytest

from wicksell_tails.config.settings import (
    DEFAULT_S_LIST,
    GridSpec,
    QuadratureConfig,
    SamplingConfig,
    VerifyConfig,
)


def test_quadrature_defaults():
    config = QuadratureConfig()
    assert config.epsrel == 1e-10
    assert config.epsabs == 0.0
    assert config.segment_ratio == 10.0


def test_quadrature_reads_environment(monkeypatch):
    monkeypatch.setenv("WICKSELL_QUAD_EPSREL", "1e-8")
    monkeypatch.setenv("WICKSELL_WORKERS", "4")
    config = QuadratureConfig()
    assert config.epsrel == 1e-8
    assert config.workers == 4


def test_cache_fields_ignore_workers():
    assert QuadratureConfig(workers=1).cache_fields() == QuadratureConfig(workers=8).cache_fields()
    assert "workers" not in QuadratureConfig().cache_fields()


def test_quadrature_is_frozen():
    config = QuadratureConfig()
    with pytest.raises(pydantic.ValidationError):
        config.epsrel = 1e-3


@pytest.mark.parametrize("kwargs", [{"epsrel": 0.0}, {"segment_ratio": 1.0}, {"workers": 0}])
def test_quadrature_rejects_bad_values(kwargs):
    with pytest.raises(pydantic.ValidationError):
        QuadratureConfig(**kwargs)


def test_grid_spec_defaults(monkeypatch):
    monkeypatch.setenv("WICKSELL_GRID_POINTS", "128")
    spec = GridSpec()
    assert spec.grid_min == 1e-7
    assert spec.points == 128


def test_grid_spec_rejects_single_point():
    with pytest.raises(pydantic.ValidationError):
        GridSpec(points=1)


def test_sampling_defaults():
    config = SamplingConfig()
    assert config.chunk_size == 65536
    assert config.max_expected_spheres == 1e7


def test_verify_config_defaults(monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
    config = VerifyConfig()
    assert config.seed == 42
    assert config.s_list == DEFAULT_S_LIST
    assert config.timestamp is None


def test_verify_config_timestamp_from_source_date(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    assert VerifyConfig().timestamp == "1970-01-01T00:00:00+00:00"


@pytest.mark.parametrize(
    "kwargs",
    [{"alphas": [0.0]}, {"etas": [-0.1]}, {"corollary_r": [0]}, {"s_list": []}, {"s_list": [1.5]}],
)
def test_verify_config_validators(kwargs):
    with pytest.raises(pydantic.ValidationError):
        VerifyConfig(**kwargs)
