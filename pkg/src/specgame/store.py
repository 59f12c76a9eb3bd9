"""File-per-record JSON store for exercises and submissions.

Layout under the data directory:

    exercises/<id>.json
    submissions/<id>.json
    index.json              # id lists, for cheap listing without a scan

No external database; records are plain JSON files a teacher can inspect
or back up with cp."""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field


class DuplicateId(Exception):
    pass


class NotFound(Exception):
    pass


class JsonStore:
    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        self._lock = threading.Lock()
        for sub in ("exercises", "submissions"):
            os.makedirs(os.path.join(data_dir, sub), exist_ok=True)
        self._index_path = os.path.join(data_dir, "index.json")
        if os.path.exists(self._index_path):
            with open(self._index_path) as f:
                self._index = json.load(f)
        else:
            self._index = {"exercises": [], "submissions": []}
            self._write_index()

    def _write_index(self):
        tmp = self._index_path + ".tmp"
        with open(tmp, "w") as f:
            json.dump(self._index, f, indent=1)
        os.replace(tmp, self._index_path)

    def _path(self, kind: str, rec_id: str) -> str:
        safe = "".join(c for c in rec_id if c.isalnum() or c in "-_")
        if safe != rec_id or not rec_id:
            raise NotFound(f"bad id {rec_id!r}")
        return os.path.join(self.data_dir, kind, f"{rec_id}.json")

    def put(self, kind: str, rec_id: str, record: dict, allow_overwrite=False):
        with self._lock:
            path = self._path(kind, rec_id)
            if not allow_overwrite and rec_id in self._index[kind]:
                raise DuplicateId(f"{kind[:-1]} {rec_id!r} already exists")
            tmp = path + ".tmp"
            with open(tmp, "w") as f:
                json.dump(record, f, indent=1)
            os.replace(tmp, path)
            if rec_id not in self._index[kind]:
                self._index[kind].append(rec_id)
                self._write_index()

    def get(self, kind: str, rec_id: str) -> dict:
        path = self._path(kind, rec_id)
        if not os.path.exists(path):
            raise NotFound(f"{kind[:-1]} {rec_id!r} not found")
        with open(path) as f:
            return json.load(f)

    def list_ids(self, kind: str):
        return list(self._index[kind])

    @staticmethod
    def new_id() -> str:
        return uuid.uuid4().hex[:12]
