import math
import time
from enum import Enum
from typing import Dict, List, Optional

import sympy
from pydantic import BaseModel, Field

from duality_lab.common.scalars import ArithmeticMode, magnitude

REPORT_FIELDS = ("case", "mode", "max_abs_residual", "max_rel_residual", "tolerance", "status", "wall_time_ms", "seed")

TINY = 1e-300
SMALLEST = 5e-324


class ReportStatus(str, Enum):
    Pass = "pass"
    Fail = "fail"


class CheckKind(str, Enum):
    Identity = "identity"
    # passes when the residual exceeds the tolerance, guards against vacuous checks
    NegativeControl = "negative-control"


class VerificationReport(BaseModel):
    case: str
    mode: ArithmeticMode
    max_abs_residual: float
    max_rel_residual: float
    tolerance: float
    status: ReportStatus
    wall_time_ms: float = Field(default=0.0)
    seed: Optional[int] = Field(default=None)
    points_checked: int = Field(default=0)
    kind: CheckKind = Field(default=CheckKind.Identity)
    relative: bool = Field(default=False)
    notes: List[str] = Field(default=[])

    @staticmethod
    def evaluate(case: str,
                 mode: ArithmeticMode,
                 max_abs_residual: float,
                 max_rel_residual: float,
                 tolerance: float,
                 points_checked: int = 0,
                 relative: bool = False,
                 kind: CheckKind = CheckKind.Identity,
                 notes: Optional[List[str]] = None,
                 seed: Optional[int] = None) -> 'VerificationReport':
        measured = max_rel_residual if relative else max_abs_residual
        within = measured <= tolerance
        passed = within if kind == CheckKind.Identity else not within
        return VerificationReport(case=case,
                                  mode=mode,
                                  max_abs_residual=max_abs_residual,
                                  max_rel_residual=max_rel_residual,
                                  tolerance=tolerance,
                                  status=ReportStatus.Pass if passed else ReportStatus.Fail,
                                  points_checked=points_checked,
                                  kind=kind,
                                  relative=relative,
                                  notes=list(notes or []),
                                  seed=seed)

    def passed(self) -> bool:
        return self.status == ReportStatus.Pass

    def with_timing(self, wall_time_ms: float) -> 'VerificationReport':
        return self.model_copy(update={"wall_time_ms": wall_time_ms})

    def record(self) -> Dict[str, object]:
        """Report fields in schema order, non-finite residuals become None"""
        dumped = self.model_dump(mode="json")
        return {name: _finite_or_none(dumped[name]) for name in REPORT_FIELDS}


def _finite_or_none(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _expression_size(expr) -> float:
    expanded = sympy.expand(expr)
    if expanded == 0:
        return 0.0
    symbols = sorted(expanded.free_symbols, key=str)
    if not symbols:
        return magnitude(expanded)
    return max(magnitude(c) for c in sympy.Poly(expanded, *symbols).coeffs())


def value_size(value) -> float:
    if isinstance(value, sympy.Basic):
        return _expression_size(value)
    return magnitude(value)


class ResidualAccumulator:
    """Max absolute and relative residual over compared value pairs"""

    def __init__(self):
        self.max_abs = 0.0
        self.max_rel = 0.0
        self.points = 0

    def add(self, lhs, rhs, scale: float = 0.0) -> None:
        """scale is the natural size of the compared terms, a floor for the relative denominator"""
        diff = lhs - rhs
        size = value_size(diff)
        if size == 0.0 and not _is_exact_zero(diff):
            size = SMALLEST
        scale = max(value_size(lhs), value_size(rhs), scale, TINY)
        self.max_abs = max(self.max_abs, size)
        self.max_rel = max(self.max_rel, size / scale if size else 0.0)
        self.points += 1

    def add_residual(self, residual: float, scale: float = 1.0) -> None:
        self.max_abs = max(self.max_abs, residual)
        self.max_rel = max(self.max_rel, residual / max(scale, TINY))
        self.points += 1

    def merge(self, other: 'ResidualAccumulator') -> 'ResidualAccumulator':
        self.max_abs = max(self.max_abs, other.max_abs)
        self.max_rel = max(self.max_rel, other.max_rel)
        self.points += other.points
        return self

    def report(self, case: str, mode: ArithmeticMode, tolerance: float, relative: bool = False,
               kind: CheckKind = CheckKind.Identity, notes: Optional[List[str]] = None) -> VerificationReport:
        return VerificationReport.evaluate(case, mode, self.max_abs, self.max_rel, tolerance, self.points,
                                           relative=relative, kind=kind, notes=notes)


def _is_exact_zero(value) -> bool:
    if isinstance(value, sympy.Basic):
        return sympy.expand(value) == 0
    if isinstance(value, float):
        return True
    if isinstance(value, complex):
        return True
    return value == 0


class Stopwatch:
    def __init__(self):
        self.__start = 0.0
        self.elapsed_ms = 0.0

    def __enter__(self) -> 'Stopwatch':
        self.__start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.elapsed_ms = (time.perf_counter() - self.__start) * 1000.0
