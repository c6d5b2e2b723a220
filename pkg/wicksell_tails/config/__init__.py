from .law_kind import EvtVariant, LawKind
from .settings import (
    DEFAULT_S_LIST,
    GridSpec,
    QuadratureConfig,
    SamplingConfig,
    VerifyConfig,
)
from .storage import RedisConfig, StorageConfig
from .storage_type import StorageTypes

__all__ = [
    "EvtVariant",
    "LawKind",
    "DEFAULT_S_LIST",
    "GridSpec",
    "QuadratureConfig",
    "SamplingConfig",
    "VerifyConfig",
    "RedisConfig",
    "StorageConfig",
    "StorageTypes",
]
