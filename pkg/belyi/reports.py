"""
Verification results shared by every module and by the catalog harness
"""
from typing import Any, Dict, List, Literal

from pydantic import BaseModel, Field

Status = Literal["pass", "fail", "skipped"]


class Check(BaseModel):
    """
    One claim that was checked, with its outcome and a short human-readable detail
    """

    claim: str
    status: Status
    detail: str = ""


class VerificationReport(BaseModel):
    """
    All checks run for one entry (or one object), plus computed values worth showing
    """

    entry: str = ""
    kind: str = ""
    checks: List[Check] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)
    wall_time: float = 0.0
    exit_code: int = 0

    def add(self, claim: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(claim=claim, status="pass" if ok else "fail", detail=detail))
        return ok

    def skip(self, claim: str, detail: str = "") -> None:
        self.checks.append(Check(claim=claim, status="skipped", detail=detail))

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(Check(claim=prefix + check.claim, status=check.status, detail=check.detail))
        self.details.update(other.details)

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [check for check in self.checks if check.status == "fail"]

    def stable_dict(self) -> Dict[str, Any]:
        """
        Everything except timing, so two runs over the same catalog compare equal
        """
        return self.model_dump(exclude={"wall_time"})
