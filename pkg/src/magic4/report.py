"""Check results and the verification report record used by the CLI."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

MAX_WITNESSES = 10


@dataclass
class CheckResult:
    """Outcome of one named check: case count, failure witnesses, extra data."""

    name: str
    checked: int = 0
    failed: int = 0
    witnesses: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def ok(self, cond: bool, witness: Any = None) -> bool:
        self.checked += 1
        if not cond:
            self.fail(witness)
        return cond

    def fail(self, witness: Any) -> None:
        self.failed += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness if isinstance(witness, str) else repr(witness))

    def merge(self, other: "CheckResult", prefix: str = "") -> "CheckResult":
        self.checked += other.checked
        self.failed += other.failed
        for w in other.witnesses:
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(f"{prefix}{w}")
        return self

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return f"{state} {self.name}: {self.checked - self.failed}/{self.checked}"


STATUSES = ("pass", "fail", "skipped")


@dataclass
class VerificationReport:
    """One line of CLI output.

    ``claim`` quotes the statement being certified. A failing check that
    certifies a reference value is categorized "reference discrepancy";
    anything else (an exception, a configuration problem) is "internal error".
    """

    suite: str
    name: str
    status: str
    elapsed: float = 0.0
    checked: int = 0
    failed: int = 0
    witness: str = ""
    claim: str = ""
    category: str = ""
    data: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("elapsed")
        return d


def reports_to_json(reports, timing: bool = True) -> str:
    ordered = sorted(reports, key=lambda r: (r.suite, r.name))
    return json.dumps([r.to_dict(timing) for r in ordered], indent=2, sort_keys=True, default=str)
