"""Common schemas."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class RingFingerprint(BaseModel):
    """Ring identity echoed in every report."""

    order: int
    sha256: str
    label: str = ""


class ErrorDetail(BaseModel):
    """Error section of a failed report."""

    code: str
    message: str
    detail: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    """Result of one CLI command."""

    success: bool = True
    message: str = "Success"
    verb: str
    ring: Optional[RingFingerprint] = None
    data: Optional[Dict[str, Any]] = None
    warnings: List[str] = Field(default_factory=list)
    error: Optional[ErrorDetail] = None
    timing_ms: Optional[float] = None


class PropertyResult(BaseModel):
    """Outcome of one property in the check battery."""

    name: str
    passed: bool
    instances: int = 0
    witness: Optional[Dict[str, Any]] = None
    skipped: bool = False
