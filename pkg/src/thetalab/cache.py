"""On-disk resolution cache: one JSON document per module, named by content hash."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from typing import Optional

from .resolution import TruncatedResolution

ENV_VAR = "THETALAB_CACHE"


def content_key(ring_key: dict, module_key: dict) -> str:
    blob = json.dumps({"ring": ring_key, "module": module_key}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResolutionCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)
        self.hits = 0
        self.writes = 0

    @classmethod
    def from_settings(cls, directory: Optional[str] = None) -> Optional["ResolutionCache"]:
        directory = os.environ.get(ENV_VAR) or directory
        return cls(directory) if directory else None

    def path(self, M) -> str:
        return os.path.join(self.directory, content_key(M.ring.key(), M.key()) + ".json")

    def load(self, M, homological_bound=None, degree_bound=None) -> Optional[TruncatedResolution]:
        p = self.path(M)
        try:
            with open(p) as fh:
                data = json.load(fh)
            res = TruncatedResolution.from_json(data, M)
        except (OSError, ValueError, KeyError):
            return None
        self.hits += 1
        return res

    def store(self, res: TruncatedResolution):
        p = self.path(res.module)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(res.to_json(), fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.writes += 1
