"""
Verdict reports shared by the validation operations and the CLI.

A report is a flat list of named checks. Checks never raise: a failed check
is recorded with a detail string, so callers see every violated instance.
"""
from typing import Any, Dict, List

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one named check."""

    name: str = Field(description="Stable, descriptive check name")
    passed: bool = Field(description="Whether the check holds")
    detail: str = Field(default="", description="Witness or explanation")


class Report(BaseModel):
    """
    A named collection of check results.

    Example:
        >>> report = Report(title="mackey")
        >>> report.add("identity", True)
        >>> report.passed
        True
    """

    title: str = Field(description="What was checked")
    checks: List[CheckResult] = Field(default_factory=list)
    notes: Dict[str, Any] = Field(default_factory=dict, description="Extra context (windows, conventions)")

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(
                CheckResult(name=f"{prefix}{check.name}", passed=check.passed, detail=check.detail)
            )

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        data = self.model_dump()
        data["passed"] = self.passed
        return data
