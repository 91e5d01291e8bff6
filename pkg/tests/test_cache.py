"""Tests for the weight-multiplicity cache."""

import json

from datum.cache import WeightCache, atomic_write_bytes, canonical_json_bytes, digest

WEIGHTS = {(1, 0): 1, (0, 1): 1}


class TestCanonicalJson:
    def test_sorted_and_newline_terminated(self):
        assert canonical_json_bytes({"b": 1, "a": [1, 2]}) == b'{"a":[1,2],"b":1}\n'

    def test_digest_ignores_key_order(self):
        assert digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1})

    def test_atomic_write_leaves_no_temporary(self, tmp_path):
        target = tmp_path / "out.json"
        atomic_write_bytes(target, b"{}\n")
        atomic_write_bytes(target, b"[]\n")
        assert target.read_bytes() == b"[]\n"
        assert [p.name for p in tmp_path.iterdir()] == ["out.json"]


class TestWeightCache:
    def test_miss_then_hit(self, weight_cache):
        assert weight_cache.load("SU2", (1, 0)) is None
        weight_cache.store("SU2", (1, 0), WEIGHTS)
        assert weight_cache.load("SU2", (1, 0)) == WEIGHTS

    def test_keys_are_distinct(self, weight_cache):
        weight_cache.store("SU2", (1, 0), WEIGHTS)
        assert weight_cache.load("U2", (1, 0)) is None
        assert weight_cache.load("SU2", (2, 0)) is None

    def test_corrupt_entry_is_discarded(self, weight_cache):
        path = weight_cache.store("SU2", (1, 0), WEIGHTS)
        path.write_text("{not json", encoding="utf-8")
        assert weight_cache.load("SU2", (1, 0)) is None
        assert not path.exists()

    def test_mismatched_key_is_discarded(self, weight_cache):
        path = weight_cache.store("SU2", (1, 0), WEIGHTS)
        document = json.loads(path.read_text(encoding="utf-8"))
        document["group"] = "SU3"
        path.write_text(json.dumps(document), encoding="utf-8")
        assert weight_cache.load("SU2", (1, 0)) is None

    def test_stats_and_clear(self, weight_cache, cache_dir):
        weight_cache.store("SU2", (1, 0), WEIGHTS)
        weight_cache.store("SU2", (2, 0), {(2, 0): 1, (1, 1): 1, (0, 2): 1})
        stats = weight_cache.get_stats()
        assert stats["entries"] == 2
        assert stats["bytes"] > 0
        assert stats["cache_dir"] == str(cache_dir)
        assert weight_cache.clear() == 2
        assert weight_cache.get_stats()["entries"] == 0

    def test_creates_directory(self, tmp_path):
        WeightCache(tmp_path / "nested" / "cache")
        assert (tmp_path / "nested" / "cache").is_dir()
