"""Structured certificate reports with text and JSON renderings.

A report is the result of one certifier run.  Verdicts are three-valued:
``pass`` / ``fail`` / ``not-applicable``.  Not-applicable is first-class
because every certified statement is conditional; a failed hypothesis must
not be conflated with a failed conclusion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


def _plain(value):
    """Convert report values to JSON-safe, exactness-preserving forms."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    instance: str
    verdict: str
    counts: dict = field(default_factory=dict)
    witnesses: tuple = ()
    sub_reports: tuple = ()

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_dict(self) -> dict:
        out = {
            "lemma": self.lemma,
            "instance": self.instance,
            "verdict": self.verdict,
            "counts": {k: _plain(v) for k, v in self.counts.items()},
            "witnesses": [_plain(w) for w in self.witnesses],
        }
        if self.sub_reports:
            out["sub_reports"] = [r.to_dict() for r in self.sub_reports]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self, prefix: str = "") -> str:
        lines = [
            f"{prefix}lemma: {self.lemma}",
            f"{prefix}instance: {self.instance}",
            f"{prefix}verdict: {self.verdict}",
        ]
        for key, value in self.counts.items():
            lines.append(f"{prefix}counts.{key}: {_plain(value)}")
        for i, w in enumerate(self.witnesses):
            lines.append(f"{prefix}witness[{i}]: {_plain(w)}")
        for i, sub in enumerate(self.sub_reports):
            lines.append(f"{prefix}sub[{i}]:")
            lines.append(sub.to_text(prefix=prefix + "  "))
        return "\n".join(lines)
