"""
Check reports and their JSON / CSV renderings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .exceptions import MalformedResultError

TOOL_VERSION = "0.1.0"

CSV_COLUMNS = [
    "suite",
    "check_name",
    "group_name",
    "status",
    "reason",
    "margin",
    "inputs",
    "computed",
]


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class CheckReport:
    """Outcome of one check on one group.

    Attributes:
        check_name: Name of the check (e.g. ``"finext-bound"``)
        group_name: Corpus name of the group checked
        inputs: Named input quantities
        computed: Named computed quantities
        status: pass, fail or skipped
        reason: Why a check was skipped or failed
        margin: Bound value minus attained value, where a bound is checked
    """

    check_name: str
    group_name: str
    inputs: dict[str, Any] = field(default_factory=dict)
    computed: dict[str, Any] = field(default_factory=dict)
    status: Status = Status.PASS
    reason: str | None = None
    margin: int | None = None

    def __post_init__(self) -> None:
        if self.status is Status.SKIPPED and not self.reason:
            raise MalformedResultError("a skipped report needs a reason")
        if self.status is Status.FAIL and not (self.computed or self.reason):
            raise MalformedResultError("a failing report must carry its quantities")

    @classmethod
    def skipped(
        cls,
        check_name: str,
        group_name: str,
        reason: str,
        inputs: dict[str, Any] | None = None,
    ) -> CheckReport:
        return cls(check_name, group_name, inputs or {}, {}, Status.SKIPPED, reason)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": self.check_name,
            "group_name": self.group_name,
            "inputs": self.inputs,
            "computed": self.computed,
            "status": self.status.value,
            "reason": self.reason,
            "margin": self.margin,
        }


def verdict(condition: bool) -> Status:
    return Status.PASS if condition else Status.FAIL


@dataclass
class SuiteResult:
    """All reports of one suite, in corpus order."""

    suite: str
    reports: list[CheckReport] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        counts = {status.value: 0 for status in Status}
        for report in self.reports:
            counts[report.status.value] += 1
        return counts

    @property
    def has_failures(self) -> bool:
        return any(r.failed for r in self.reports)

    def to_dict(self, generated_at: str | None = None) -> dict[str, Any]:
        data: dict[str, Any] = {"suite": self.suite, "tool_version": TOOL_VERSION}
        if generated_at is not None:
            data["generated_at"] = generated_at
        data["summary"] = self.counts
        data["reports"] = [r.to_dict() for r in self.reports]
        return data


def render_json(results: list[SuiteResult], generated_at: str | None = None) -> str:
    """One JSON object for a single suite, an array for several."""
    payload: Any = [r.to_dict(generated_at) for r in results]
    if len(results) == 1:
        payload = payload[0]
    return json.dumps(payload, indent=2) + "\n"


def render_csv(results: list[SuiteResult]) -> str:
    """Flat projection: one row per report, nested maps as JSON strings."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for result in results:
        for report in result.reports:
            row = report.to_dict()
            row["suite"] = result.suite
            row["inputs"] = json.dumps(report.inputs, sort_keys=True)
            row["computed"] = json.dumps(report.computed, sort_keys=True)
            row["reason"] = report.reason or ""
            row["margin"] = "" if report.margin is None else report.margin
            writer.writerow(row)
    return buffer.getvalue()
