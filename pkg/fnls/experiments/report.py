import os
import json
import hashlib
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import pandas as pd

from fnls import get_version
from fnls.utils.io_utils import _save_json, save_csv, to_jsonable

logger = logging.getLogger(__name__)

REPORT_NAME = "report.json"


def content_hash(payload: dict) -> str:
    """git blob SHA-1 of the canonical JSON encoding of payload."""
    data = json.dumps(to_jsonable(payload), sort_keys=True, separators=(",", ":")).encode("utf-8")
    header = f"blob {len(data)}\0".encode("utf-8")
    return hashlib.sha1(header + data).hexdigest()


class ArtifactWriter:
    """Writes experiment artifacts under one directory and keeps the manifest."""

    def __init__(self, directory: str):
        self.directory = directory
        self.manifest: List[str] = []

    def path(self, name: str) -> str:
        return os.path.join(self.directory, name)

    def _record(self, path: str):
        self.manifest.append(os.path.relpath(path, self.directory))

    def csv(self, name: str, frame: pd.DataFrame) -> str:
        path = self.path(name)
        save_csv(path, frame)
        self._record(path)
        return path

    def json(self, name: str, payload: dict) -> str:
        path = self.path(name)
        _save_json(path, to_jsonable(payload))
        self._record(path)
        return path

    def extend(self, paths):
        for p in paths:
            self._record(p)


@dataclass
class ExperimentReport:
    kind: str
    config: dict
    seed: int
    content_hash: str
    results: dict = field(default_factory=dict)
    manifest: List[str] = field(default_factory=list)
    wall_seconds: float = 0.0
    g1_variant: Optional[str] = None
    version: str = field(default_factory=get_version)

    def to_dict(self) -> dict:
        return to_jsonable({
            "kind": self.kind,
            "version": self.version,
            "seed": self.seed,
            "content_hash": self.content_hash,
            "g1_variant": self.g1_variant,
            "config": self.config,
            "results": self.results,
            "manifest": self.manifest,
            "wall_seconds": self.wall_seconds,
        })

    def write(self, directory: str) -> str:
        """report.json goes last so a complete report implies complete artifacts."""
        path = os.path.join(directory, REPORT_NAME)
        _save_json(path, self.to_dict())
        logger.info("Report written to %s", path)
        return path
