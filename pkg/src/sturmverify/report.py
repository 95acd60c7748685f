"""Schema-versioned JSON verification reports."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

SCHEMA_VERSION = "1"


@dataclass
class CheckRecord:
    """Outcome of one identity or estimate comparison."""

    check_id: str
    statement: str
    expected: float
    actual: float
    tol: float
    mode: str
    passed: bool
    abs_err: float
    rel_err: float
    stderr: float | None = None
    note: str = ""

    @classmethod
    def compare(cls, check_id, statement, expected, actual, tol, *, mode="rel", stderr=None, note=""):
        """Build a record; ``mode`` is "rel", "abs", or "sigma" (tol * stderr).

        Sigma comparisons carry a 1e-12 relative floor: when the sampling
        proposal matches the integrand exactly the reported stderr collapses
        to 0 and only float rounding separates the two values.
        """
        expected = float(expected)
        actual = float(actual)
        abs_err = abs(actual - expected)
        denom = max(abs(expected), abs(actual))
        rel_err = abs_err / denom if denom else 0.0
        if mode == "rel":
            passed = rel_err <= tol
        elif mode == "abs":
            passed = abs_err <= tol
        elif mode == "sigma":
            passed = abs_err <= tol * (stderr or 0.0) + 1e-12 * denom
        else:
            raise ValueError(f"unknown comparison mode {mode!r}")
        return cls(
            check_id=check_id,
            statement=statement,
            expected=expected,
            actual=actual,
            tol=tol,
            mode=mode,
            passed=passed,
            abs_err=abs_err,
            rel_err=rel_err,
            stderr=stderr,
            note=note,
        )

    def to_json(self) -> dict:
        data = {
            "id": self.check_id,
            "statement": self.statement,
            "expected": self.expected,
            "actual": self.actual,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tol": self.tol,
            "mode": self.mode,
            "pass": self.passed,
        }
        if self.stderr is not None:
            data["stderr"] = self.stderr
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class VerificationReport:
    """All check outcomes of one suite run."""

    suite: str
    seed: int
    checks: list = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, records) -> None:
        self.checks.extend(records)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "wall_time_s": self.wall_time_s,
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def write(self, out_path=None) -> None:
        text = self.dumps() + "\n"
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
