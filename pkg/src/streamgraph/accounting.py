"""Pass counting and bit-level memory accounting.

Every algorithm routes its cross-item state through a :class:`MemoryLedger`
and every traversal of a stream through a :class:`PassMeter`.  Budgets are
expressed as ``c * formula`` where ``c`` defaults to 64 and can be overridden
with the ``STREAMGRAPH_BUDGET_C`` environment variable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from .errors import BudgetExceededError

DEFAULT_BUDGET_C = 64


def budget_constant() -> float:
    raw = os.environ.get("STREAMGRAPH_BUDGET_C")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET_C
    return float(raw)


def vertex_id_bits(n: int) -> int:
    """Bits for one vertex id in 1..n, i.e. ceil(log2(n + 1))."""
    return max(int(n), 0).bit_length()


def counter_bits(max_value: int) -> int:
    """Bits for a counter ranging over 0..max_value, i.e. ceil(log2(max_value + 1))."""
    return max(int(max_value), 0).bit_length()


def log2n(n: int) -> float:
    return math.log2(n + 1)


class PassMeter:
    """Counts passes; raises once a set budget would be exceeded."""

    def __init__(self, budget: int | None = None, algorithm: str = "", formula: str = ""):
        self.passes_used = 0
        self.budget = budget
        self.algorithm = algorithm
        self.formula = formula

    def arm(self, algorithm: str, budget: float, formula: str) -> None:
        """Install a budget unless the caller already set one."""
        if self.budget is None:
            self.budget = math.floor(budget)
            self.algorithm = algorithm
            self.formula = formula

    def tick(self, count: int = 1) -> None:
        attempted = self.passes_used + count
        if self.budget is not None and attempted > self.budget:
            raise BudgetExceededError(
                self.algorithm or "algorithm", "pass", self.formula or "declared", self.budget, attempted
            )
        self.passes_used = attempted

    def __repr__(self) -> str:
        return f"PassMeter(passes_used={self.passes_used}, budget={self.budget})"


class Charge:
    """Handle for bits held in a ledger; release it to refund them."""

    __slots__ = ("ledger", "bits", "label", "released")

    def __init__(self, ledger: "MemoryLedger", bits: int, label: str):
        self.ledger = ledger
        self.bits = bits
        self.label = label
        self.released = False

    def resize(self, bits: int) -> None:
        if self.released:
            raise RuntimeError(f"charge {self.label!r} already released")
        delta = bits - self.bits
        self.ledger._apply(delta, self.label)
        self.bits = bits

    def release(self) -> None:
        if not self.released:
            self.ledger._apply(-self.bits, self.label)
            self.released = True

    def __enter__(self) -> "Charge":
        return self

    def __exit__(self, *exc) -> None:
        self.release()


class MemoryLedger:
    """Logical bit accounting for algorithm state (not process memory)."""

    def __init__(self, budget_bits: float | None = None, algorithm: str = "", formula: str = ""):
        self.current_bits = 0
        self.peak_bits = 0
        self.budget_bits = budget_bits
        self.algorithm = algorithm
        self.formula = formula

    def arm(self, algorithm: str, budget_bits: float, formula: str) -> None:
        if self.budget_bits is None:
            self.budget_bits = budget_bits
            self.algorithm = algorithm
            self.formula = formula

    def charge(self, bits: int, label: str = "") -> Charge:
        if bits < 0:
            raise ValueError("cannot charge a negative number of bits")
        self._apply(bits, label)
        return Charge(self, bits, label)

    def vertex_ids(self, n: int, count: int = 1, label: str = "vertex ids") -> Charge:
        return self.charge(count * vertex_id_bits(n), label)

    def counters(self, max_value: int, count: int = 1, label: str = "counters") -> Charge:
        return self.charge(count * counter_bits(max_value), label)

    def flags(self, count: int = 1, label: str = "flags") -> Charge:
        return self.charge(count, label)

    def _apply(self, delta: int, label: str) -> None:
        new = self.current_bits + delta
        if delta > 0 and self.budget_bits is not None and new > self.budget_bits:
            raise BudgetExceededError(
                self.algorithm or "algorithm",
                f"memory ({label})" if label else "memory",
                self.formula or "declared",
                self.budget_bits,
                new,
            )
        self.current_bits = new
        if new > self.peak_bits:
            self.peak_bits = new

    def __repr__(self) -> str:
        return f"MemoryLedger(current={self.current_bits}, peak={self.peak_bits}, budget={self.budget_bits})"


@dataclass
class Telemetry:
    """Meter readings after a run, as reported by the CLI and bench harness."""

    passes_used: int
    peak_bits: int
    pass_budget: int | None = None
    bit_budget: float | None = None
    pass_formula: str = ""
    bit_formula: str = ""
    extra: dict = field(default_factory=dict)

    @classmethod
    def read(cls, meter: PassMeter, ledger: MemoryLedger, **extra) -> "Telemetry":
        return cls(
            passes_used=meter.passes_used,
            peak_bits=ledger.peak_bits,
            pass_budget=meter.budget,
            bit_budget=ledger.budget_bits,
            pass_formula=meter.formula,
            bit_formula=ledger.formula,
            extra=extra,
        )


def meters(meter: PassMeter | None, ledger: MemoryLedger | None) -> tuple[PassMeter, MemoryLedger]:
    """Fresh meters for any that were not supplied."""
    return (meter if meter is not None else PassMeter(), ledger if ledger is not None else MemoryLedger())
