"""Shared fixtures for the DimDatum test suite."""

from collections.abc import Iterator
from pathlib import Path

import pytest

from datum.cache import WeightCache
from verifier.config import Settings, get_settings


@pytest.fixture
def cache_dir(tmp_path: Path) -> Path:
    path = tmp_path / "cache"
    path.mkdir()
    return path


@pytest.fixture
def weight_cache(cache_dir: Path) -> WeightCache:
    return WeightCache(cache_dir)


@pytest.fixture
def settings(cache_dir: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[Settings]:
    """Settings isolated from the caller's environment and home cache."""
    for name in (
        "DIMDATUM_JOBS",
        "DIMDATUM_SEED",
        "DIMDATUM_OUTPUT_FORMAT",
        "DIMDATUM_LOG_LEVEL",
        "DIMDATUM_DEBUG",
        "DIMDATUM_MAX_POLYNOMIAL_RANK",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("DIMDATUM_CACHE_DIR", str(cache_dir))
    get_settings.cache_clear()
    yield get_settings()
    get_settings.cache_clear()
