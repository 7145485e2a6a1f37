from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    detail: Optional[str] = None

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name} ({self.checked} cases)"
        if self.detail:
            line += f": {self.detail}"
        return line


@dataclass
class VerificationReport:
    """Ordered collection of named pass/fail checks."""

    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [asdict(check) for check in self.checks],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def render(self) -> str:
        lines = [f"{self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        lines.extend("  " + check.render() for check in self.checks)
        return "\n".join(lines)
