"""Verification reports shared by all verifier routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one verified statement: pass/fail plus evidence counters."""

    statement: str
    passed: bool
    instances: int = 0
    counterexample: str | None = None
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "statement": self.statement,
            "status": "pass" if self.passed else "fail",
            "instances": self.instances,
            "wall_time": round(self.wall_time, 3),
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class ReportSet:
    """A named bundle of CheckReports with an aggregate verdict."""

    name: str
    reports: list[CheckReport] = field(default_factory=list)

    def add(self, report: CheckReport) -> CheckReport:
        self.reports.append(report)
        return report

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "status": "pass" if self.passed else "fail",
            "checks": [r.to_dict() for r in self.reports],
        }
