"""Deterministic command reports (text and canonical JSON)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "info")
SIG_DIGITS = 12


def _round(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite value {x!r}")
        r = float(f"{x:.{SIG_DIGITS}g}")
        return 0.0 if r == 0.0 else r  # no "-0.0"
    return x


@dataclass
class Report:
    command: str
    status: str = "info"
    values: dict = field(default_factory=dict)
    details: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}")

    @property
    def exit_code(self) -> int:
        return 1 if self.status == "fail" else 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "values": {k: _round(v) for k, v in self.values.items()},
            "details": list(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=True)

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"{self.command}: {self.status.upper()}"]
        width = max((len(k) for k in d["values"]), default=0)
        for key in sorted(d["values"]):
            lines.append(f"  {key:<{width}} = {d['values'][key]}")
        lines.extend(f"  - {line}" for line in self.details)
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()
