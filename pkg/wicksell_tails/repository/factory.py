import logging
from typing import Union

from pydantic import BaseModel

from ..config.storage import RedisConfig, StorageConfig
from ..config.storage_type import StorageTypes
from ..errors import UsageError
from .base import BaseRepository

logger = logging.getLogger(__name__)


class RepositoryFactory:
    """
    Factory creating the section-table cache for a storage configuration.

    Methods:
        create(config: StorageConfig) -> BaseRepository:
            Creates a repository instance based on the provided storage configuration.

        _create_local_repository(config: StorageConfig) -> BaseRepository:
            Creates an instance of LocalRepository for in-memory storage.

        _create_redis_repository(config: RedisConfig) -> BaseRepository:
            Creates an instance of RedisRepository; requires the `redis` extra.
    """

    @staticmethod
    def create(config: Union[StorageConfig, RedisConfig, BaseModel]) -> BaseRepository:
        """
        Create a repository instance based on the provided storage configuration.

        Raises:
            UsageError: If the storage type is unknown (a `ValueError`).

        Examples:
            >>> repository = RepositoryFactory.create(StorageConfig(storage_type=StorageTypes.MEMORY))
            >>> isinstance(repository, LocalRepository)
            True

            >>> RepositoryFactory.create(StorageConfig(storage_type="UNKNOWN_TYPE"))
            UsageError: Unknown storage type: UNKNOWN_TYPE, available types: ['redis', 'memory']
        """
        settings = config.model_dump()
        storage_type = settings.pop("storage_type", StorageTypes.MEMORY)
        logger.debug("section-table cache: %s (prefix %r)", storage_type, settings.get("key_prefix"))
        if storage_type == StorageTypes.REDIS:
            return RepositoryFactory._create_redis_repository(RedisConfig(**settings))
        elif storage_type == StorageTypes.MEMORY:
            return RepositoryFactory._create_local_repository(StorageConfig(**settings))
        else:
            raise UsageError(
                f"Unknown storage type: {storage_type}, available types: {StorageTypes.values()}"
            )

    @staticmethod
    def _create_local_repository(config: StorageConfig) -> BaseRepository:
        from .local import LocalRepository

        return LocalRepository(config)

    @staticmethod
    def _create_redis_repository(config: RedisConfig) -> BaseRepository:
        from .redis import RedisRepository

        return RedisRepository(config)


__all__ = ["RepositoryFactory"]
