from .base import BaseRepository, SingletonABCMeta
from .factory import RepositoryFactory

__all__ = ["BaseRepository", "SingletonABCMeta", "RepositoryFactory"]
