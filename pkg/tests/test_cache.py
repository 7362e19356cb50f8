import json

from ilat.cache import ENV_VAR, KLCache, resolve_cache_dir
from ilat.kubota_leopoldt import kl_series


def test_round_trip(tmp_path):
    cache = KLCache(tmp_path)
    kl = kl_series(5, 3, 3, 3)
    assert cache.get(5, 3, 3, 3) is None
    path = cache.put(kl)
    assert path.exists()
    assert cache.get(5, 3, 3, 3) == kl
    assert not list(tmp_path.glob(".tmp-*"))


def test_corrupt_entries_are_ignored(tmp_path):
    cache = KLCache(tmp_path)
    kl = kl_series(5, 3, 3, 3)
    path = cache.put(kl)
    entry = json.loads(path.read_text())
    entry["payload"]["series"]["coeffs"][0] = "1"
    path.write_text(json.dumps(entry))
    assert cache.get(5, 3, 3, 3) is None
    path.write_text("{not json")
    assert cache.get(5, 3, 3, 3) is None
    cache.put(kl)
    assert cache.get(5, 3, 3, 3) == kl


def test_env_var_overrides_flag(tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert resolve_cache_dir(None) is None
    assert resolve_cache_dir("x") == type(tmp_path)("x")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert resolve_cache_dir("x") == tmp_path
