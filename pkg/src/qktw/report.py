"""Structured pass/fail cases with exact sides, and their JSON rendering.

Exact values (big integers, rationals) are rendered as decimal strings —
"123" or "num/den" — since they routinely exceed 64-bit JSON numbers.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction


def _str(x: int) -> str:
    # exact certificates (e.g. 4th-power tail majorants) routinely exceed
    # the interpreter's default int-to-str conversion guard
    try:
        return str(x)
    except ValueError:
        sys.set_int_max_str_digits(0)
        return str(x)


def exact_str(x) -> str | None:
    """Render an int or Fraction exactly; None stays None."""
    if x is None:
        return None
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return _str(x.numerator)
        return f"{_str(x.numerator)}/{_str(x.denominator)}"
    if isinstance(x, int):
        return _str(x)
    return str(x)


def _jsonable(x):
    if isinstance(x, Fraction):
        return exact_str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, int) and abs(x) >= 2**53:
        return str(x)
    return x


@dataclass
class CheckCase:
    """One verified inequality or structural check."""

    params: dict
    lhs: object = None
    rhs: object = None
    passed: bool = True
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "params": _jsonable(self.params),
            "lhs": exact_str(self.lhs),
            "rhs": exact_str(self.rhs),
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class SuiteReport:
    suite: str
    cases: list[CheckCase] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.passed)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": [c.to_json() for c in self.cases],
            "summary": {
                "total": self.total,
                "passed": self.total - self.failed,
                "failed": self.failed,
            },
        }
