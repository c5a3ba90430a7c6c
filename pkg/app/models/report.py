# app/models/report.py

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.core.config import settings
from app.core.references import reference_for


class ReportStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


class SuiteName(str, Enum):
    FORMAL = "formal"
    NUMERIC = "numeric"
    ALL = "all"


class CheckDetail(BaseModel):
    check_name: str
    reference: str
    passed: bool
    expected: Optional[str] = None
    actual: Optional[str] = None
    location: Optional[str] = None


class IdentityReport(BaseModel):
    """Resultado de un verificador: una identidad, varias comprobaciones"""

    identity: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    truncation: Dict[str, Any] = Field(default_factory=dict)
    details: List[CheckDetail] = Field(default_factory=list)
    data: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.details)

    def add_check(
        self,
        check_name: str,
        passed: bool,
        expected: Any = None,
        actual: Any = None,
        location: Any = None,
    ) -> CheckDetail:
        detail = CheckDetail(
            check_name=check_name,
            reference=reference_for(check_name),
            passed=passed,
            expected=None if expected is None else str(expected),
            actual=None if actual is None else str(actual),
            location=None if location is None else str(location),
        )
        self.details.append(detail)
        return detail

    @property
    def failures(self) -> List[CheckDetail]:
        return [d for d in self.details if not d.passed]


class VerificationReport(BaseModel):
    """Documento JSON único por ejecución del CLI"""

    schema_version: str = settings.REPORT_SCHEMA_VERSION
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    status: ReportStatus = ReportStatus.PASS
    identities: List[str] = Field(default_factory=list)
    references: List[str] = Field(default_factory=list)
    details: List[CheckDetail] = Field(default_factory=list)
    results: List[Dict[str, Any]] = Field(default_factory=list)
    timing_ms: int = 0
    seed: Optional[int] = None
    precision_bits: Optional[int] = None
    error: Optional[str] = None

    @property
    def failure_count(self) -> int:
        return sum(1 for d in self.details if not d.passed)

    def absorb(self, result: IdentityReport) -> None:
        """Incorporar el resultado de un verificador"""
        if result.identity not in self.identities:
            self.identities.append(result.identity)
        self.details.extend(result.details)
        for detail in result.details:
            if detail.reference not in self.references:
                self.references.append(detail.reference)
        self.results.append(
            {
                "identity": result.identity,
                "parameters": result.parameters,
                "truncation": result.truncation,
                "passed": result.passed,
                **({"data": result.data} if result.data else {}),
            }
        )
        self.refresh_status()

    def refresh_status(self) -> None:
        if self.status == ReportStatus.ERROR:
            return
        self.status = ReportStatus.FAIL if self.failure_count else ReportStatus.PASS

    def canonical_json(self, include_timing: bool = True) -> str:
        exclude = None if include_timing else {"timing_ms"}
        return self.model_dump_json(indent=2, exclude=exclude)
