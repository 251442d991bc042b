"""Deterministic JSON certificates for the CLI.

The results section of a certificate is byte-identical across runs of the
same command (keys sorted, rationals as "p/q" strings, no timestamps);
wall-clock data lives in the provenance section only.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__
from .expectations import EXPECTATIONS_VERSION
from .repetition import format_rational
from .words import Word


def _canonical(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Word):
        return value.text()
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_canonical(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items.sort(key=json.dumps)
        return items
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


class Certificate:
    def __init__(self, command: str, config: dict | None = None):
        self.command = command
        self.config = config or {}
        self.results: dict[str, Any] = {}
        self.discrepancies: list[str] = []
        self.mismatches: list[str] = []
        self.wall_time: float | None = None
        self.nodes: int | None = None

    def add(self, key: str, value) -> None:
        self.results[key] = value

    def note_discrepancy(self, text: str) -> None:
        self.discrepancies.append(text)

    def check(self, name: str, actual, expected) -> bool:
        """Record one reproduction check; a mismatch flips the exit code."""
        ok = actual == expected
        entry = {"actual": actual, "expected": expected, "matched": ok}
        self.results.setdefault("checks", {})[name] = entry
        if not ok:
            self.mismatches.append(name)
        return ok

    @property
    def matched(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "config": _canonical(self.config),
            "results": _canonical(self.results),
            "discrepancy_notes": list(self.discrepancies),
            "mismatches": list(self.mismatches),
            "provenance": {
                "tool": "richrep",
                "version": __version__,
                "expectations_version": EXPECTATIONS_VERSION,
            },
        }
        if self.wall_time is not None:
            out["provenance"]["wall_time_s"] = round(self.wall_time, 3)
        if self.nodes is not None:
            out["provenance"]["nodes"] = self.nodes
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
