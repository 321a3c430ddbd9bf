"""Verification reports: one JSON object per (claim, params) job.

verdict is "pass" exactly when the mismatch list is empty.  runtime_ms is
null unless timing was requested, so that re-running a command yields
byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

CLAIMS = (
    "theorem1",
    "corollary2",
    "prop3",
    "prop4",
    "prop5",
    "prop6",
    "gh",
    "lemma3",
    "lemma10-equiv",
)


@dataclass
class Report:
    claim: str
    params: dict
    lhs: str = ""
    rhs: str = ""
    mismatches: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    runtime_ms: float = None

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise ValueError(f"unknown claim {self.claim!r}")

    @property
    def verdict(self) -> str:
        return "pass" if not self.mismatches else "fail"

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "verdict": self.verdict,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "mismatches": self.mismatches,
            "counts": self.counts,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
