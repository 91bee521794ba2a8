"""On-disk JSON cache: one file per entry under a two-level hash directory.

Entries carry a checksum of their payload; a mismatch or unreadable file is
treated as a miss.  Writes go to a temporary file that is then renamed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

SCHEMA_VERSION = 1

log = logging.getLogger(__name__)


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def cache_key(cartan_type: str, rank: int, operation: str, args: Any, schema_version: int = SCHEMA_VERSION) -> str:
    blob = canonical_json([schema_version, cartan_type, rank, operation, args])
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / key[2:4] / f"{key}.json"

    def get(self, key: str) -> Any | None:
        if self.root is None:
            return None
        path = self._path(key)
        try:
            raw = json.loads(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("cache read failed for %s: %s", key, exc)
            return None
        payload = raw.get("payload") if isinstance(raw, dict) else None
        if raw.get("checksum") != _checksum(payload) or raw.get("key") != key:
            log.warning("cache entry %s is corrupt; ignoring", key)
            return None
        return payload

    def put(self, key: str, value: Any) -> None:
        if self.root is None:
            return
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            body = canonical_json({"key": key, "checksum": _checksum(value), "payload": value})
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(body)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("cache write failed for %s: %s", key, exc)


def _checksum(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()
