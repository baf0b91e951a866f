"""On-disk JSON cache for per-degree linear-algebra results.

One file per ``(structure, degree, version)``.  Builds take an exclusive
file lock and publish with an atomic rename, so concurrent readers only ever
see complete files.  ``CONFLUENCE_CACHE_DIR`` selects the directory.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Callable

from filelock import FileLock

FORMAT_VERSION = 1

_override: Path | None = None


def set_cache_dir(path) -> None:
    """Process-wide override, used by the CLI ``--cache-dir`` flag."""
    global _override
    _override = Path(path) if path is not None else None


def cache_dir() -> Path:
    if _override is not None:
        d = _override
    elif os.environ.get("CONFLUENCE_CACHE_DIR"):
        d = Path(os.environ["CONFLUENCE_CACHE_DIR"])
    else:
        d = Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "pentaconf"
    d.mkdir(parents=True, exist_ok=True)
    return d


def _path(structure: str, degree: int) -> Path:
    return cache_dir() / ("%s-d%d-v%d.json" % (structure, degree, FORMAT_VERSION))


def _read(path: Path, structure: str, degree: int):
    try:
        with open(path) as fh:
            blob = json.load(fh)
    except (OSError, ValueError):
        return None
    if blob.get("structure") != structure or blob.get("degree") != degree or blob.get("version") != FORMAT_VERSION:
        return None
    return blob["data"]


def load_or_build(structure: str, degree: int, build: Callable[[], object]):
    """Return cached JSON data, building (once, under a lock) if missing or stale."""
    path = _path(structure, degree)
    data = _read(path, structure, degree)
    if data is not None:
        return data
    with FileLock(str(path) + ".lock"):
        data = _read(path, structure, degree)
        if data is not None:
            return data
        data = build()
        blob = {"structure": structure, "degree": degree, "version": FORMAT_VERSION, "data": data}
        fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(blob, fh, separators=(",", ":"), sort_keys=True)
        os.replace(tmp, path)
    return data
