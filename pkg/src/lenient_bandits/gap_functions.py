"""The eps-gap function family and per-trajectory lenient-regret sums.

A gap function maps a suboptimality gap in [0, 1] to a nonnegative penalty
and ignores gaps of at most eps.  The closed set of variants is:

    standard          f(d) = d                 (the 0-gap function)
    hinge:<eps>       f(d) = max(d - eps, 0)
    indicator:<eps>   f(d) = 1[d > eps]
    thresholded:<eps> f(d) = d * 1[d > eps]

The ``<eps>`` spellings above are also the config-file / CSV labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = ["GapFunction", "indicator_regret_integral"]

_KINDS = ("standard", "hinge", "indicator", "thresholded")


@dataclass(frozen=True)
class GapFunction:
    kind: str
    eps: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gap function kind {self.kind!r}")
        if not 0.0 <= self.eps <= 1.0:
            raise ValueError(f"eps must lie in [0, 1], got {self.eps}")
        if self.kind == "standard" and self.eps != 0.0:
            raise ValueError("standard gap function takes no eps")

    @classmethod
    def standard(cls) -> "GapFunction":
        return cls("standard")

    @classmethod
    def hinge(cls, eps: float) -> "GapFunction":
        return cls("hinge", eps)

    @classmethod
    def indicator(cls, eps: float) -> "GapFunction":
        return cls("indicator", eps)

    @classmethod
    def thresholded(cls, eps: float) -> "GapFunction":
        return cls("thresholded", eps)

    @classmethod
    def parse(cls, text: str) -> "GapFunction":
        """Parse the config spelling, e.g. ``hinge:0.2`` or ``standard``."""
        text = text.strip()
        if text == "standard":
            return cls.standard()
        if ":" not in text:
            raise ValueError(f"cannot parse gap function {text!r}")
        kind, _, eps_str = text.partition(":")
        if kind not in ("hinge", "indicator", "thresholded"):
            raise ValueError(f"unknown gap function kind {kind!r}")
        try:
            eps = float(eps_str)
        except ValueError:
            raise ValueError(f"bad eps in gap function spec {text!r}") from None
        return cls(kind, eps)

    def spell(self) -> str:
        """Inverse of :meth:`parse`; used as the CSV label."""
        if self.kind == "standard":
            return "standard"
        return f"{self.kind}:{self.eps:g}"

    def evaluate(self, delta: float) -> float:
        """Penalty for a single gap value.  The gate ``delta > eps`` is strict."""
        if not 0.0 <= delta <= 1.0:
            raise ValueError(f"gap must lie in [0, 1], got {delta}")
        if self.kind == "standard":
            return delta
        if self.kind == "hinge":
            return max(delta - self.eps, 0.0)
        if self.kind == "indicator":
            return 1.0 if delta > self.eps else 0.0
        return delta if delta > self.eps else 0.0

    def trajectory_regret(self, gaps: Iterable[float]) -> float:
        """Sum of penalties over one trajectory's per-step gap values."""
        return sum(self.evaluate(g) for g in gaps)


def indicator_regret_integral(gaps: list[float]) -> float:
    """Exact integral over eps in [0, 1] of the indicator-regret of ``gaps``.

    The integrand eps -> sum_t 1[gap_t > eps] is piecewise constant with
    breakpoints at the distinct gap values, so the integral is computed
    exactly as a finite sum of interval lengths times counts.
    """
    for g in gaps:
        if not 0.0 <= g <= 1.0:
            raise ValueError(f"gap must lie in [0, 1], got {g}")
    points = sorted(set(gaps) | {0.0, 1.0})
    total = 0.0
    for lo, hi in zip(points, points[1:]):
        # For eps in (lo, hi), gap > eps iff gap >= hi.
        count = sum(1 for g in gaps if g >= hi)
        total += count * (hi - lo)
    return total
