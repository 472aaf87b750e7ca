"""On-disk cache of computed series.

Files live in ``$JACGEN_CACHE_DIR`` (default ``./.jacgen-cache``) and use the
series document format. Writes go to a temporary file that is renamed into
place, so concurrent readers never see a partial file.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .symfun import from_document, to_document

ENV_VAR = "JACGEN_CACHE_DIR"
SUFFIX = ".series"


def cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, ".jacgen-cache"))


def dumps(series) -> str:
    return json.dumps(to_document(series), indent=1, sort_keys=False) + "\n"


def atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(sid):
    path = cache_dir() / sid.filename
    try:
        text = path.read_text()
    except (FileNotFoundError, NotADirectoryError):
        return None
    return from_document(json.loads(text))


def store(sid, series):
    try:
        atomic_write(cache_dir() / sid.filename, dumps(series))
    except OSError:
        # an unwritable cache only costs speed
        pass


def entries() -> list:
    """``(name, size_bytes)`` for every cached series, sorted by name."""
    root = cache_dir()
    if not root.is_dir():
        return []
    return sorted((p.name, p.stat().st_size) for p in root.iterdir() if p.name.endswith(SUFFIX))


def clear() -> int:
    root = cache_dir()
    removed = 0
    if root.is_dir():
        for p in root.iterdir():
            if p.name.endswith(SUFFIX):
                p.unlink()
                removed += 1
    return removed
