"""On-disk cache of computed Kubota-Leopoldt series.

Entries are JSON files with a sha256 of the canonical payload.  Anything
that fails to parse or verify is treated as a miss and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .kubota_leopoldt import KLSeries

FORMAT_VERSION = 1
ENV_VAR = "ILAT_CACHE_DIR"

log = logging.getLogger(__name__)


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def resolve_cache_dir(flag: str | os.PathLike | None) -> Path | None:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(flag) if flag else None


class KLCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path_for(self, p: int, j: int, N: int, M: int) -> Path:
        return self.root / f"kl-v{FORMAT_VERSION}-p{p}-j{j}-N{N}-M{M}.json"

    def get(self, p: int, j: int, N: int, M: int) -> KLSeries | None:
        path = self.path_for(p, j, N, M)
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            if entry.get("format_version") != FORMAT_VERSION:
                return None
            if hashlib.sha256(canonical(payload).encode()).hexdigest() != entry["checksum"]:
                log.warning("ignoring corrupt cache entry %s", path)
                return None
            if entry.get("key") != [p, j, N, M]:
                return None
            return KLSeries.from_json(payload)
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", path, exc)
            return None

    def put(self, kl: KLSeries) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        payload = kl.to_json()
        entry = {
            "format_version": FORMAT_VERSION,
            "key": [kl.p, kl.j, kl.guaranteed_N, kl.M],
            "payload": payload,
            "checksum": hashlib.sha256(canonical(payload).encode()).hexdigest(),
        }
        path = self.path_for(kl.p, kl.j, kl.guaranteed_N, kl.M)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical(entry))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path
