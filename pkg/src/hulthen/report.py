"""Verification records and their JSON form."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    suite: str
    case: str
    residual: float
    tolerance: float
    expected_failure: bool = False

    @property
    def passed(self) -> bool:
        """Expected failures pass when the residual exceeds the tolerance floor."""
        ok = math.isfinite(self.residual)
        if self.expected_failure:
            return ok and self.residual > self.tolerance
        return ok and self.residual <= self.tolerance

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "case": self.case,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }
        if self.expected_failure:
            out["expected_failure"] = True
        return out

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        rel = ">" if self.expected_failure else "<="
        xf = " (expected failure)" if self.expected_failure else ""
        return f"{tag}  [{self.suite}] {self.case}: residual {self.residual:.3e} {rel} {self.tolerance:.1e}{xf}"


def dumps_report(checks, metadata: dict | None = None) -> str:
    """Serialize checks; the ``data`` section depends only on the checks."""
    data = {
        "checks": [c.to_dict() for c in checks],
        "summary": {
            "total": len(checks),
            "passed": sum(c.passed for c in checks),
            "failed": sum(not c.passed for c in checks),
        },
    }
    return json.dumps({"metadata": metadata or {}, "data": data}, indent=2, sort_keys=True) + "\n"
