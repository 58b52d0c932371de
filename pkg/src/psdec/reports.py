"""Verification reports shared by the spectral, gl3 and closed-form checks."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
EXPECTED_DEVIATION = "expected-deviation"
STATUSES = (PASS, FAIL, EXPECTED_DEVIATION)

# Only the comparison against the printed g_n closed forms may deviate.
DEVIATION_CHECKS = frozenset({"zeta.eta2"})


class VerificationError(AssertionError):
    def __init__(self, report: "Report"):
        super().__init__(f"{report.check} failed: {report.detail}")
        self.report = report


@dataclass
class Report:
    check: str
    params: dict[str, Any]
    status: str
    detail: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == EXPECTED_DEVIATION and self.check not in DEVIATION_CHECKS:
            raise ValueError(f"{self.check} may not be marked {EXPECTED_DEVIATION}")

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Report":
        return cls(data["check"], dict(data["params"]), data["status"], dict(data.get("detail", {})))

    def raise_if_failed(self) -> "Report":
        if self.status == FAIL:
            raise VerificationError(self)
        return self


def make_report(check: str, params: dict, ok: bool, detail: dict | None = None, strict: bool = True) -> Report:
    report = Report(check, params, PASS if ok else FAIL, detail or {})
    return report.raise_if_failed() if strict else report
