"""Shipped JSON schemas for profile documents and reports."""

import json
from importlib import resources

NAMES = ("profile", "check_report", "verdict_report")


def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"unknown schema {name!r}; known: {', '.join(NAMES)}")
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8"))
