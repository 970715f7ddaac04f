"""Per-step competitive-ratio traces.

Ratios are exact integer pairs.  Conventions: for the max objective the ratio
is opt/strategy with strategy=0 mapped to infinity (unless opt is 0 too, which
counts as ratio 1); for the min objective it is strategy/opt with opt=0 mapped
to infinity when the strategy already pays and 1 when both sides are 0.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

MAX = "max"
MIN = "min"


@dataclass(frozen=True, order=False)
class ExactRatio:
    """Non-negative rational with an explicit infinity (den == 0)."""

    num: int
    den: int

    @classmethod
    def of(cls, num: int, den: int) -> "ExactRatio":
        if den == 0:
            return cls(1, 0) if num > 0 else cls(1, 1)  # 0/0 convention: ratio 1
        g = gcd(num, den)
        return cls(num // g, den // g)

    @classmethod
    def infinite(cls) -> "ExactRatio":
        return cls(1, 0)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ZeroDivisionError("infinite ratio")
        return Fraction(self.num, self.den)

    def as_float(self) -> float:
        return float("inf") if self.is_infinite else self.num / self.den

    def decimal(self, places: int = 3) -> str:
        return "inf" if self.is_infinite else f"{self.num / self.den:.{places}f}"

    def __lt__(self, other: "ExactRatio") -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.num * other.den < other.num * self.den

    def __le__(self, other: "ExactRatio") -> bool:
        return self == other or self < other


def step_ratio(strategy_value: int, opt_value: int, objective: str) -> ExactRatio:
    if objective == MAX:
        return ExactRatio.of(opt_value, strategy_value)
    if objective == MIN:
        return ExactRatio.of(strategy_value, opt_value)
    raise ValueError(f"unknown objective {objective!r}")


@dataclass(frozen=True)
class TraceStep:
    t: int  # 1-based step
    strategy_value: int
    opt_value: int
    ratio: ExactRatio


@dataclass
class RatioTrace:
    objective: str
    steps: list[TraceStep]

    def final_ratio(self) -> ExactRatio:
        return self.steps[-1].ratio

    def worst(self) -> TraceStep:
        """First step attaining the maximum ratio."""
        best = self.steps[0]
        for s in self.steps[1:]:
            if best.ratio < s.ratio:
                best = s
        return best

    def to_json(self, meta: dict) -> str:
        worst = self.worst()
        doc = {
            "meta": meta,
            "steps": [
                {
                    "t": s.t,
                    "strategy_value": s.strategy_value,
                    "opt_value": s.opt_value,
                    "ratio_num": s.ratio.num,
                    "ratio_den": s.ratio.den,
                }
                for s in self.steps
            ],
            "worst": {
                "t": worst.t,
                "ratio_num": worst.ratio.num,
                "ratio_den": worst.ratio.den,
                "ratio": worst.ratio.decimal(3),
            },
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "strategy_value", "opt_value", "ratio"])
        for s in self.steps:
            w.writerow([s.t, s.strategy_value, s.opt_value, s.ratio.decimal(6)])
        return buf.getvalue()


def trace_from_json(text: str) -> RatioTrace:
    doc = json.loads(text)
    steps = [
        TraceStep(
            s["t"],
            s["strategy_value"],
            s["opt_value"],
            ExactRatio(s["ratio_num"], s["ratio_den"]),
        )
        for s in doc["steps"]
    ]
    return RatioTrace(doc["meta"]["objective"], steps)
