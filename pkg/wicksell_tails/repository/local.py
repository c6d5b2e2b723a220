import logging
from threading import Lock
from typing import Dict, Optional

from ..config.storage import StorageConfig
from .base import BaseRepository

logger = logging.getLogger(__name__)


class LocalRepository(BaseRepository):
    """
    Repository implementation using an in-process dictionary.

    Attributes:
        _store (Dict[str, str]): Stored documents by prefixed key.
        _config (StorageConfig): Configuration object for the repository.
    """

    def __init__(self, config: StorageConfig):
        self._store: Dict[str, str] = {}
        self._lock = Lock()
        self._config: StorageConfig = config

    @property
    def config(self) -> StorageConfig:
        return self._config

    @config.setter
    def config(self, config: StorageConfig) -> None:
        self._config = config

    def _key(self, key: str) -> str:
        return f"{self._config.key_prefix}:{key}"

    def get(self, key: str) -> Optional[str]:
        """
        Examples:
            >>> repo = LocalRepository(StorageConfig())
            >>> repo.set("key1", "value1")
            >>> repo.get("key1")
            'value1'
        """
        with self._lock:
            return self._store.get(self._key(key))

    def set(self, key: str, value: str) -> None:
        with self._lock:
            self._store[self._key(key)] = value

    def delete(self, key: str) -> None:
        with self._lock:
            self._store.pop(self._key(key), None)

    def clear(self) -> None:
        prefix = f"{self._config.key_prefix}:"
        with self._lock:
            for key in [k for k in self._store if k.startswith(prefix)]:
                del self._store[key]
        logger.debug("cleared in-memory tables under %r", prefix)


__all__ = ["LocalRepository"]
