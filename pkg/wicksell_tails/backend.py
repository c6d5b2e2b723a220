import hashlib
import json
import logging
from typing import Any, Dict, Optional, Tuple

from .config.settings import GridSpec, QuadratureConfig
from .config.storage import StorageConfig
from .laws.base import RadiusLaw
from .laws.tabulated import TabulatedLaw
from .repository.base import BaseRepository
from .repository.factory import RepositoryFactory
from .transform.section import iterate_section, tabulate_section_law
from .transform.section_law import SectionLaw

logger = logging.getLogger(__name__)


class SectionTableBackend:
    """
    Tabulates section laws through a shared cache.

    Tables are keyed by a SHA-256 digest of everything that changes their
    values: the law specification, the codimension, the grid and the
    quadrature tolerances. The thread count is not part of the key, since
    tabulation is deterministic across thread counts.

    Attributes:
        _quadrature (QuadratureConfig): Quadrature settings used for every table.
        _grid (GridSpec): Grid parameters used for every table.
        _storage_config (StorageConfig): Configuration of the cache.
        _cache (BaseRepository): The repository holding serialised tables.

    Methods:
        tabulate(law, r, dims=None) -> SectionLaw: Cached `tabulate_section_law`.
        iterate(sl) -> SectionLaw: Cached `iterate_section`.
        invalidate(law, r) -> None: Drop a cached table.
    """

    def __init__(
        self,
        quadrature: Optional[QuadratureConfig] = None,
        grid: Optional[GridSpec] = None,
        storage_config: Optional[StorageConfig] = None,
    ):
        self._quadrature = quadrature or QuadratureConfig()
        self._grid = grid or GridSpec()
        self._storage_config = storage_config or StorageConfig()
        self._cache = RepositoryFactory.create(self._storage_config)

    @property
    def quadrature(self) -> QuadratureConfig:
        return self._quadrature

    @property
    def grid(self) -> GridSpec:
        return self._grid

    @property
    def cache(self) -> BaseRepository:
        return self._cache

    def _digest(self, payload: Dict[str, Any]) -> str:
        payload = {
            **payload,
            "grid": self._grid.model_dump(),
            "quadrature": self._quadrature.cache_fields(),
        }
        text = json.dumps(payload, sort_keys=True, default=str)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def table_key(self, law: RadiusLaw, r: int, dims: Optional[Tuple[int, int]] = None) -> Optional[str]:
        """Cache key of a direct table, or None for laws without a plain specification."""
        if isinstance(law, TabulatedLaw):
            return None
        return "table:" + self._digest(
            {"law": law.spec(), "r": int(r), "dims": list(dims) if dims else None}
        )

    def _load(self, key: Optional[str]) -> Optional[SectionLaw]:
        if key is None:
            return None
        cached = self._cache.get(key)
        if cached is None:
            logger.debug("cache miss %s", key[:18])
            return None
        logger.debug("cache hit %s", key[:18])
        return SectionLaw.from_payload(json.loads(cached))

    def _store(self, key: Optional[str], sl: SectionLaw) -> SectionLaw:
        if key is not None:
            self._cache.set(key, json.dumps(sl.to_payload()))
        return sl

    def tabulate(self, law: RadiusLaw, r: int, dims: Optional[Tuple[int, int]] = None) -> SectionLaw:
        """
        Tabulate F^(r), reusing a cached table when one exists.

        Examples:
            >>> backend = SectionTableBackend()
            >>> first = backend.tabulate(DiracLaw(rho=1.0), 1)
            >>> bool((backend.tabulate(DiracLaw(rho=1.0), 1).cdf_values == first.cdf_values).all())
            True
        """
        key = self.table_key(law, r, dims)
        cached = self._load(key)
        if cached is not None:
            return cached
        sl = tabulate_section_law(law, r, grid_spec=self._grid, config=self._quadrature, dims=dims)
        return self._store(key, sl)

    def iterate(self, sl: SectionLaw) -> SectionLaw:
        """Section a table once more; keyed by a fingerprint of the table itself."""
        fingerprint = hashlib.sha256(sl.grid.tobytes() + sl.cdf_values.tobytes()).hexdigest()
        key = "iterate:" + self._digest({"table": fingerprint, "r": sl.r, "source": sl.source})
        cached = self._load(key)
        if cached is not None:
            return cached
        return self._store(key, iterate_section(sl, self._quadrature))

    def invalidate(self, law: RadiusLaw, r: int, dims: Optional[Tuple[int, int]] = None) -> None:
        key = self.table_key(law, r, dims)
        if key is not None:
            self._cache.delete(key)


__all__ = ["SectionTableBackend"]
