import logging
from typing import Optional

from redis import Redis

from ..config.storage import RedisConfig
from .base import BaseRepository

logger = logging.getLogger(__name__)


class RedisRepository(BaseRepository):
    """
    Repository implementation using Redis.

    Attributes:
        _config (RedisConfig): Configuration object for connecting to Redis.
        _redis (Redis): Client used for every command; responses are decoded to str.
    """

    def __init__(self, config: RedisConfig):
        """
        Args:
            config (RedisConfig): The configuration object containing Redis connection details.
        """
        self._config: RedisConfig = config
        self._redis: Redis = Redis.from_url(self._config.get_url(), decode_responses=True)

    @property
    def redis(self) -> Redis:
        return self._redis

    @property
    def config(self) -> RedisConfig:
        return self._config

    def _key(self, key: str) -> str:
        return f"{self._config.key_prefix}:{key}"

    def get(self, key: str) -> Optional[str]:
        """
        Retrieve a document from Redis.

        Examples:
            >>> repo = RedisRepository(RedisConfig(host="localhost", port=6379, db=0))
            >>> repo.set("sample_key", "{}")
            >>> repo.get("sample_key")
            '{}'
        """
        value = self._redis.get(self._key(key))
        if isinstance(value, bytes):
            return value.decode("utf-8")
        return value

    def set(self, key: str, value: str) -> None:
        self._redis.set(self._key(key), value)

    def delete(self, key: str) -> None:
        self._redis.delete(self._key(key))

    def clear(self) -> None:
        keys = list(self._redis.scan_iter(match=f"{self._config.key_prefix}:*"))
        if keys:
            self._redis.delete(*keys)
        logger.debug("cleared %d Redis keys under %r", len(keys), self._config.key_prefix)


__all__ = ["RedisRepository"]
