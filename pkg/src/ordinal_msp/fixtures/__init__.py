"""Small shipped instances used by ``msp verify`` and the test-suite.

``index.json`` lists each file with the engines it exercises and its level:
``quick`` fixtures have ``n <= 5``, ``full`` adds instances with ``n <= 7``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..zoo import load_instance

__all__ = ["Fixture", "FIXTURE_DIR", "load_fixtures"]

FIXTURE_DIR = Path(__file__).resolve().parent
LEVELS = ("quick", "full")


@dataclass(frozen=True)
class Fixture:
    name: str
    instance: object
    engines: tuple
    level: str
    note: str = ""


def load_fixtures(level: str = "full") -> list:
    """Fixtures up to ``level``; ``full`` includes the quick ones."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {', '.join(LEVELS)}")
    keep = LEVELS[:LEVELS.index(level) + 1]
    out = []
    for entry in json.loads((FIXTURE_DIR / "index.json").read_text()):
        if entry["level"] in keep:
            out.append(Fixture(Path(entry["file"]).stem, load_instance(FIXTURE_DIR / entry["file"]),
                               tuple(entry["engines"]), entry["level"], entry.get("note", "")))
    return out
