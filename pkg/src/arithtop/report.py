"""Report objects shared by the command-line pipelines."""

from __future__ import annotations

import csv
import json
import os
import time
from typing import Any, Dict, Iterable, List, Optional, Sequence


class Report:
    """Ordered, JSON-serializable record of one command run.

    Timings are kept apart and only emitted on request so that reports are
    byte-stable across runs.
    """

    def __init__(self, command: str, argv: Sequence[str]):
        self.command = command
        self.argv = list(argv)
        self.inputs: Dict[str, Any] = {}
        self.results: Dict[str, Any] = {}
        self.provenance: List[str] = []
        self.checks: Dict[str, str] = {}
        self.errors: List[str] = []
        self.timing: Dict[str, float] = {}
        self.files: List[str] = []
        self._t0 = time.perf_counter()

    def timed(self, name: str):
        report = self

        class _Timer:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                report.timing[name] = round(time.perf_counter() - self.t, 4)
                return False

        return _Timer()

    def check(self, name: str, ok: bool) -> None:
        self.checks[name] = "PASS" if ok else "FAIL"

    @property
    def ok(self) -> bool:
        return not self.errors and all(v == "PASS" for v in self.checks.values())

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "command": self.command,
            "argv": self.argv,
            "inputs": self.inputs,
            "results": self.results,
            "provenance": self.provenance,
            "checks": self.checks,
            "errors": self.errors,
            "files": self.files,
        }
        if timing:
            self.timing["total"] = round(time.perf_counter() - self._t0, 4)
            out["timing"] = self.timing
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["" if x is None else x for x in r])
    return path


def matrix_rows(M: Sequence[Sequence[Any]]) -> List[List[Any]]:
    return [[i + 1] + list(row) for i, row in enumerate(M)]


def render_text(d: Dict[str, Any], indent: int = 0) -> str:
    """Plain indented rendering of a report dictionary."""
    pad = "  " * indent
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            if not v:
                continue
            lines.append(f"{pad}{k}:")
            lines.append(render_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            if v in ([], None, ""):
                continue
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(x for x in lines if x)


def maybe_join(base: Optional[str], name: str) -> Optional[str]:
    return None if base is None else os.path.join(base, name)
