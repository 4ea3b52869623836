"""Check reports: outcome, count of identities evaluated, and violations."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactla import DenseTensor, format_scalar

MAX_VIOLATIONS = 10


@dataclass
class Violation:
    equation_tag: str
    basis_tuple: tuple[int, ...]
    lhs: list[Fraction]
    rhs: list[Fraction]

    def to_json(self) -> dict:
        return {
            "equation_tag": self.equation_tag,
            "basis_tuple": list(self.basis_tuple),
            "lhs": [format_scalar(v) for v in self.lhs],
            "rhs": [format_scalar(v) for v in self.rhs],
        }


@dataclass
class Report:
    ok: bool = True
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0
    timing: float = 0.0
    name: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def compare(self, tag: str, lhs: DenseTensor, rhs: DenseTensor, limit: int = MAX_VIOLATIONS) -> bool:
        """Compare two tensors slot by slot (output axis last) and record differences."""
        if lhs.shape != rhs.shape:
            raise ValueError(f"{tag}: shape mismatch {lhs.shape} vs {rhs.shape}")
        n_in = lhs.ndim - 1
        self.checked += int(np.prod(lhs.shape[:-1], dtype=np.int64)) if n_in else 1
        if lhs == rhs:
            return True
        diff = (lhs - rhs).num
        bad = np.argwhere(np.any(diff != 0, axis=-1)) if n_in else np.zeros((1, 0), dtype=int)
        self.ok = False
        self.violation_count += len(bad)
        for idx in bad:
            if len(self.violations) >= limit:
                break
            t = tuple(int(i) for i in idx)
            self.violations.append(Violation(
                tag, t,
                [Fraction(v, lhs.den) for v in lhs.num[t]],
                [Fraction(v, rhs.den) for v in rhs.num[t]],
            ))
        return False

    def require(self, tag: str, cond: bool, basis_tuple: Sequence[int] = (), lhs=(), rhs=()) -> bool:
        self.checked += 1
        if not cond:
            self.ok = False
            self.violation_count += 1
            if len(self.violations) < MAX_VIOLATIONS:
                self.violations.append(Violation(tag, tuple(basis_tuple), list(lhs), list(rhs)))
        return cond

    def merge(self, other: "Report") -> "Report":
        self.ok = self.ok and other.ok
        self.checked += other.checked
        self.violation_count += other.violation_count
        room = MAX_VIOLATIONS - len(self.violations)
        self.violations.extend(other.violations[:max(room, 0)])
        return self

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "name": self.name,
            "checked": self.checked,
            "violation_count": self.violation_count,
            "violations": [v.to_json() for v in self.violations],
            "timing": round(self.timing, 6),
        }

    def to_text(self) -> str:
        status = "ok" if self.ok else "FAILED"
        lines = [f"{self.name or 'check'}: {status} ({self.checked} identities, {self.timing:.3f}s)"]
        for v in self.violations:
            args = ", ".join(f"e{i + 1}" for i in v.basis_tuple)
            lhs = "(" + ", ".join(format_scalar(x) for x in v.lhs) + ")"
            rhs = "(" + ", ".join(format_scalar(x) for x in v.rhs) + ")"
            lines.append(f"  [{v.equation_tag}] at ({args}): lhs={lhs} rhs={rhs}")
        if self.violation_count > len(self.violations):
            lines.append(f"  ... {self.violation_count - len(self.violations)} more")
        return "\n".join(lines)


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.timing = time.perf_counter() - t0
