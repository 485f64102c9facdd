"""Structured pass/fail reports for the verification suites.

A report is a flat list of cases.  Each case carries its identifying
parameters (rationals rendered as "p/q" strings) and, on failure, a witness
describing the exact discrepancy.  Serialization is deterministic: field
order is fixed and timing lives in a single optional field that callers may
strip before byte-comparing runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping


def encode_value(value: Any) -> Any:
    """Make a value JSON-ready: rationals become 'p/q' strings, tuples lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Mapping):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return str(value)


def encode_rationals(values: Iterable) -> list[str]:
    """Render a sequence of rationals uniformly as 'p/q' strings."""
    return [str(Fraction(v)) for v in values]


@dataclass
class CaseResult:
    case: str
    passed: bool
    params: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] | None = None

    def to_dict(self) -> dict:
        rec: dict[str, Any] = {
            "case": self.case,
            "params": encode_value(self.params),
            "pass": self.passed,
        }
        if self.witness is not None:
            rec["witness"] = encode_value(self.witness)
        return rec


@dataclass
class VerificationReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed_s: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def counts(self) -> dict[str, int]:
        done = sum(1 for c in self.cases if c.passed)
        return {"total": len(self.cases), "passed": done,
                "failed": len(self.cases) - done}

    def add(self, case: str, passed: bool, params: dict | None = None,
            witness: dict | None = None) -> bool:
        """Record one case; witnesses are kept only for failures."""
        self.cases.append(CaseResult(
            case=case, passed=bool(passed), params=params or {},
            witness=None if passed else witness))
        return passed

    def note(self, text: str) -> None:
        self.notes.append(text)

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "suite": self.suite,
            "passed": self.passed,
            "counts": self.counts,
            "notes": list(self.notes),
            "cases": [c.to_dict() for c in self.cases],
        }
        if self.elapsed_s is not None:
            out["elapsed_s"] = round(self.elapsed_s, 3)
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)
