"""
DimDatum - Weight Multiplicity Cache

Persistent on-disk store for full weight systems of irreducible
representations, one JSON document per (group, highest weight).
Readers may run concurrently; each write lands atomically via rename.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any, Optional, Union

from .exceptions import CacheError
from .lattice import Weight

logger = logging.getLogger(__name__)

CACHE_VERSION = 1


def canonical_json_bytes(obj: object) -> bytes:
    """Sorted-key compact JSON with a trailing newline."""
    text = json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"
    return text.encode("utf-8", errors="strict")


def digest(obj: object) -> str:
    return hashlib.sha256(canonical_json_bytes(obj)).hexdigest()


def atomic_write_bytes(path: Path, data: bytes) -> None:
    """Write to a sibling temporary file, then rename over ``path``."""
    tmp = path.with_name(f"{path.name}.tmp.{os.getpid()}")
    with tmp.open("wb") as f:
        f.write(data)
        f.flush()
        os.fsync(f.fileno())
    os.replace(str(tmp), str(path))


class WeightCache:
    """
    Manages the weight-multiplicity cache directory.

    Features:
    - One file per (group, highest weight), named by a SHA-256 key digest
    - Atomic writes, safe for concurrent readers
    - Corrupt entries are discarded and recomputed
    """

    SUFFIX = ".json"

    def __init__(self, cache_dir: Union[str, Path]):
        """
        Initialize the cache.

        Args:
            cache_dir: Directory holding the cache documents
        """
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, group: str, hw: Weight) -> Path:
        key = digest({"group": group, "hw": list(hw)})
        return self.cache_dir / f"{key}{self.SUFFIX}"

    @staticmethod
    def _parse(document: Any, group: str, hw: Weight) -> dict[Weight, int]:
        if not isinstance(document, dict) or document.get("version") != CACHE_VERSION:
            raise CacheError("unexpected cache document version")
        if document.get("group") != group or tuple(document.get("hw", ())) != hw:
            raise CacheError("cache document key does not match its file name")
        weights: dict[Weight, int] = {}
        for row in document.get("weights", []):
            if not isinstance(row, list) or len(row) != len(hw) + 1:
                raise CacheError(f"malformed weight row {row!r}")
            *coords, mult = row
            weights[tuple(int(c) for c in coords)] = int(mult)
        return weights

    def load(self, group: str, hw: Weight) -> Optional[dict[Weight, int]]:
        """
        Read a cached weight system.

        Args:
            group: Group name, e.g. ``SU6``
            hw: Canonical highest weight

        Returns:
            {weight: multiplicity}, or None on a miss
        """
        path = self._path(group, hw)
        if not path.exists():
            return None
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
            weights = self._parse(document, group, hw)
        except (OSError, ValueError, CacheError) as e:
            logger.warning(f"Discarding corrupt cache entry {path.name}: {e}")
            path.unlink(missing_ok=True)
            return None
        logger.debug(f"Cache hit for {group}{hw}")
        return weights

    def store(self, group: str, hw: Weight, weights: dict[Weight, int]) -> Path:
        document = {
            "version": CACHE_VERSION,
            "group": group,
            "hw": list(hw),
            "weights": [[*mu, mult] for mu, mult in sorted(weights.items())],
        }
        path = self._path(group, hw)
        atomic_write_bytes(path, canonical_json_bytes(document))
        logger.info(f"Cached {len(weights)} weights for {group}{hw}")
        return path

    def _entries(self) -> list[Path]:
        return sorted(p for p in self.cache_dir.glob(f"*{self.SUFFIX}") if p.is_file())

    def get_stats(self) -> dict[str, Any]:
        """Get statistics about the cache directory."""
        entries = self._entries()
        return {
            "entries": len(entries),
            "bytes": sum(p.stat().st_size for p in entries),
            "cache_dir": str(self.cache_dir),
        }

    def clear(self) -> int:
        """Delete every cache entry; returns the number removed."""
        entries = self._entries()
        for path in entries:
            path.unlink(missing_ok=True)
        logger.info(f"Cleared {len(entries)} cache entries from {self.cache_dir}")
        return len(entries)
