"""Built-in data files: tagset, lexicons, templates, trained models."""

from importlib import resources
from pathlib import Path


def read_text(relpath: str) -> str:
    return path(relpath).read_text(encoding="utf-8")


def path(relpath: str) -> Path:
    base = resources.files(__package__)
    return Path(str(base)) / relpath
