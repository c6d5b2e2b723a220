from abc import ABCMeta, abstractmethod
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel


def _config_key(args: Tuple[Any, ...], kwargs: Dict[str, Any]) -> str:
    config = kwargs.get("config", args[0] if args else None)
    if isinstance(config, BaseModel):
        return type(config).__name__ + config.model_dump_json()
    return repr(config)


class SingletonABCMeta(ABCMeta):
    """
    A Singleton metaclass that also supports Abstract Base Classes (ABC).

    There is one instance per concrete repository and configuration, so
    backends with equal storage settings share one table cache while a
    different prefix or server gets its own.
    """

    _instances: Dict[Any, Any] = {}

    def __call__(cls, *args, **kwargs):
        key = (cls, _config_key(args, kwargs))
        if key not in cls._instances:
            cls._instances[key] = super().__call__(*args, **kwargs)
        return cls._instances[key]


class BaseRepository(metaclass=SingletonABCMeta):
    """
    Key-value store for serialised section tables.

    Keys are plain strings (content hashes); values are JSON documents.

    Methods:
        get(key: str) -> Optional[str]:
            Retrieve a stored document.

        set(key: str, value: str) -> None:
            Store a document under a key.

        delete(key: str) -> None:
            Remove a key; missing keys are ignored.

        clear() -> None:
            Remove every key written under the configured prefix.
    """

    @abstractmethod
    def get(self, key: str) -> Optional[str]:
        """
        Args:
            key (str): The key for the value to retrieve.

        Returns:
            Optional[str]: The stored document, or None if not found.
        """

    @abstractmethod
    def set(self, key: str, value: str) -> None:
        """
        Args:
            key (str): The key to associate with the value.
            value (str): The document to store.
        """

    @abstractmethod
    def delete(self, key: str) -> None:
        """
        Args:
            key (str): The key for the value to delete.
        """

    @abstractmethod
    def clear(self) -> None: ...


__all__ = ["SingletonABCMeta", "BaseRepository"]
