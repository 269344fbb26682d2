from typing import Any, Dict, List, Literal, Optional
from pydantic import BaseModel, ConfigDict, Field

CheckStatus = Literal["pass", "fail", "skipped", "discrepancy"]


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    status: CheckStatus
    detail: str = ""


class Provenance(BaseModel):
    version: str
    convention: str = "chevalley-extraspecial-positive"
    constants_sha256: Optional[str] = None
    seed: Optional[int] = None


class RunReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: List[str]
    algebra: Optional[str] = None
    results: Dict[str, Any] = Field(default_factory=dict)
    checks: List[CheckResult] = Field(default_factory=list)
    provenance: Provenance

    def add_check(self, name: str, passed: bool, detail: str = "") -> CheckResult:
        """Append a pass/fail check and return it."""
        check = CheckResult(name=name, status="pass" if passed else "fail", detail=detail)
        self.checks.append(check)
        return check

    def extend_checks(self, checks: List[CheckResult]) -> None:
        self.checks.extend(checks)

    @property
    def failed(self) -> List[CheckResult]:
        """Checks with status 'fail'."""
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> str:
        """Canonical JSON; byte-stable for identical inputs."""
        return self.model_dump_json(indent=2, exclude_none=True)
