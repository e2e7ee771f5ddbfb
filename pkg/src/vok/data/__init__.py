"""Frozen golden values, versioned under v1/."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

VERSION = "v1"


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    path = resources.files(__package__).joinpath(VERSION, f"{name}.json")
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)
