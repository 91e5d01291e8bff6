"""
DimDatum - Verification Reports

Per-check records and suite-level aggregation, rendered as canonical
JSON or plain text.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Literal, Optional

from datum.cache import digest

logger = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

Status = Literal["pass", "fail", "skip"]


@dataclass
class CheckRecord:
    """Outcome of a single check."""

    id: str
    status: Status
    lhs_digest: str = ""
    rhs_digest: str = ""
    detail: str = ""
    reproducer: dict[str, Any] = field(default_factory=dict)
    timing_ms: Optional[float] = None

    @classmethod
    def compare(
        cls,
        check_id: str,
        lhs: Any,
        rhs: Any,
        reproducer: dict[str, Any],
        detail: str = "",
    ) -> "CheckRecord":
        """Pass iff the two JSON-ready sides are equal; digests record both."""
        return cls(
            id=check_id,
            status="pass" if lhs == rhs else "fail",
            lhs_digest=digest(lhs),
            rhs_digest=digest(rhs),
            detail=detail,
            reproducer=reproducer,
        )

    @classmethod
    def within(
        cls,
        check_id: str,
        error: float,
        tolerance: float,
        reproducer: dict[str, Any],
    ) -> "CheckRecord":
        """Pass iff a numeric error is within tolerance."""
        return cls(
            id=check_id,
            status="pass" if error <= tolerance else "fail",
            detail=f"error={error:.3e} tolerance={tolerance:.1e}",
            reproducer=reproducer,
        )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.id,
            "status": self.status,
            "lhs_digest": self.lhs_digest,
            "rhs_digest": self.rhs_digest,
            "detail": self.detail,
            "reproducer": self.reproducer,
        }
        if self.timing_ms is not None:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


@dataclass
class Report:
    """Aggregated results for one suite run."""

    suite: str
    parameters: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckRecord] = field(default_factory=list)
    artifacts: dict[str, Any] = field(default_factory=dict)

    passed: int = 0
    failed: int = 0
    skipped: int = 0

    def add_check(self, record: CheckRecord) -> None:
        """Add a record and update counters."""
        self.checks.append(record)
        if record.status == "pass":
            self.passed += 1
        elif record.status == "fail":
            self.failed += 1
            logger.error(f"{self.suite}: check {record.id} failed: {record.detail}")
        else:
            self.skipped += 1

    def extend(self, records: list[CheckRecord]) -> None:
        for record in records:
            self.add_check(record)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_summary(self) -> dict[str, Any]:
        return {
            "total": len(self.checks),
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "failed_ids": [c.id for c in self.checks if c.status == "fail"],
        }

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "suite": self.suite,
            "parameters": self.parameters,
            "tool_version": TOOL_VERSION,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.to_summary(),
        }
        if self.artifacts:
            out["artifacts"] = self.artifacts
        return out

    def render(self, output_format: Literal["json", "text"] = "json") -> str:
        if output_format == "json":
            return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        lines = [f"suite {self.suite} {json.dumps(self.parameters, sort_keys=True)}"]
        for c in self.checks:
            suffix = f"  {c.detail}" if c.detail else ""
            lines.append(f"{c.status.upper():4} {c.id}{suffix}")
        summary = self.to_summary()
        lines.append(
            f"{summary['passed']} passed, {summary['failed']} failed, {summary['skipped']} skipped"
        )
        return "\n".join(lines) + "\n"
