# models.py - report data classes shared by the suites and the renderers

import json
from dataclasses import dataclass, field

REPORT_SCHEMA = "1"

PASS = "pass"
FAIL = "fail"
SKIP = "skip"
STATUSES = (PASS, FAIL, SKIP)


@dataclass(frozen=True)
class CheckResult:
    """
    One verification check.

    data holds structured detail (verdicts, counts) for the JSON report;
    elapsed is wall time in seconds and never part of the check itself.
    """

    id: str
    description: str
    status: str
    detail: str = ""
    data: dict | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown check status {self.status!r}")

    @property
    def suite(self):
        return self.id.split("/", 1)[0]

    def as_dict(self):
        out = {"id": self.id, "description": self.description, "status": self.status, "detail": self.detail}
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass(frozen=True)
class Report:
    suite: str
    checks: tuple
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'checks', tuple(sorted(self.checks, key=lambda c: c.id)))

    def count(self, status):
        return sum(1 for c in self.checks if c.status == status)

    @property
    def failed(self):
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self):
        return not self.failed

    @property
    def exit_code(self):
        return 0 if self.ok else 1

    @property
    def timing(self):
        return {c.id: round(c.elapsed, 6) for c in self.checks}

    def summary(self):
        return {"total": len(self.checks), PASS: self.count(PASS), FAIL: self.count(FAIL), SKIP: self.count(SKIP)}

    def as_dict(self, include_timing=True):
        out = {
            "schema": REPORT_SCHEMA,
            "suite": self.suite,
            "options": self.options,
            "summary": self.summary(),
            "checks": [c.as_dict() for c in self.checks],
        }
        if include_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, include_timing=True):
        return json.dumps(self.as_dict(include_timing), indent=2, sort_keys=True, ensure_ascii=False)
