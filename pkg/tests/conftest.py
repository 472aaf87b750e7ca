import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    # keep computed series out of the working tree
    path = tmp_path_factory.mktemp("jacgen-cache")
    old = os.environ.get("JACGEN_CACHE_DIR")
    os.environ["JACGEN_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("JACGEN_CACHE_DIR", None)
    else:
        os.environ["JACGEN_CACHE_DIR"] = old
