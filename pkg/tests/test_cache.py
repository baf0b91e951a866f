import json

from pentaconf import cache


def test_builds_once_and_reuses(tmp_path):
    old = cache._override
    cache.set_cache_dir(tmp_path)
    try:
        calls = []

        def build():
            calls.append(1)
            return {"x": [1, 2, 3]}

        assert cache.load_or_build("demo", 3, build) == {"x": [1, 2, 3]}
        assert cache.load_or_build("demo", 3, build) == {"x": [1, 2, 3]}
        assert len(calls) == 1
        path = tmp_path / ("demo-d3-v%d.json" % cache.FORMAT_VERSION)
        blob = json.loads(path.read_text())
        assert blob["structure"] == "demo" and blob["degree"] == 3
    finally:
        cache.set_cache_dir(old)


def test_stale_or_corrupt_entries_are_rebuilt(tmp_path):
    old = cache._override
    cache.set_cache_dir(tmp_path)
    try:
        path = tmp_path / ("demo-d2-v%d.json" % cache.FORMAT_VERSION)
        path.write_text("{not json")
        assert cache.load_or_build("demo", 2, lambda: [7]) == [7]
        blob = json.loads(path.read_text())
        blob["version"] = -1
        path.write_text(json.dumps(blob))
        assert cache.load_or_build("demo", 2, lambda: [8]) == [8]
    finally:
        cache.set_cache_dir(old)


def test_environment_variable(tmp_path, monkeypatch):
    old = cache._override
    cache.set_cache_dir(None)
    try:
        monkeypatch.setenv("CONFLUENCE_CACHE_DIR", str(tmp_path / "env"))
        assert cache.cache_dir() == tmp_path / "env"
        assert (tmp_path / "env").is_dir()
    finally:
        cache.set_cache_dir(old)
