import pydantic
import pytest

from wicksell_tails.config.storage import RedisConfig, StorageConfig
from wicksell_tails.config.storage_type import StorageTypes
from wicksell_tails.errors import UsageError
from wicksell_tails.repository.base import BaseRepository
from wicksell_tails.repository.factory import RepositoryFactory
from wicksell_tails.repository.local import LocalRepository
from wicksell_tails.repository.redis import RedisRepository


def test_create_local_repository():
    config = StorageConfig()
    repository = RepositoryFactory._create_local_repository(config)
    assert isinstance(repository, BaseRepository)
    assert isinstance(repository, LocalRepository)


def test_create_redis_repository():
    config = RedisConfig()
    repository = RepositoryFactory._create_redis_repository(config)
    assert isinstance(repository, BaseRepository)
    assert isinstance(repository, RedisRepository)


def test_create_unknown_storage_type():
    with pytest.raises(pydantic.ValidationError):
        config = StorageConfig(storage_type="unknown")
        RepositoryFactory.create(config)


def test_create_repository_with_memory_storage():
    config = StorageConfig(storage_type=StorageTypes.MEMORY, key_prefix="tables")
    repository = RepositoryFactory.create(config)
    assert isinstance(repository, LocalRepository)
    assert repository.config.key_prefix == "tables"


def test_create_repository_with_redis_storage():
    config = RedisConfig(storage_type=StorageTypes.REDIS, host="cache", port=6380)
    repository = RepositoryFactory.create(config)
    assert isinstance(repository, RedisRepository)
    assert repository.config.get_url() == "redis://cache:6380/0"


def test_create_repository_with_invalid_storage_type():
    class CustomStorageConfig(pydantic.BaseModel):
        storage_type: str = "INVALID_TYPE"

    config = CustomStorageConfig()
    with pytest.raises(UsageError, match="Unknown storage type: INVALID_TYPE"):
        RepositoryFactory.create(config)
