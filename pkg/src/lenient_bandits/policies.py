"""Vanilla Thompson Sampling and its leniency-aware variant.

Both policies keep per-arm pull counts and reward sums and select arms by
sampling a score per arm and playing the argmax (ties broken uniformly).
Vanilla TS samples from the Beta(S+1, N-S+1) posterior.  The eps variant
squeezes the posterior into [0, 1-eps] and short-circuits to the empirical
mean whenever it exceeds 1-eps, giving such arms strict priority over every
Beta-branch arm.  With eps = 0 the variant reduces to vanilla TS exactly,
consuming the identical draw sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .environments import RngStream

__all__ = ["ArmStats", "PolicyState", "posterior_params", "select", "update"]

# Absolute slack when comparing the integer ratio S/N against 1-eps; branch
# differences inside the slack mean mathematical equality, which takes the
# Beta branch.
_BRANCH_TOL = 1e-9


@dataclass
class ArmStats:
    __slots__ = ("n", "s")
    n: int
    s: int

    @property
    def empirical_mean(self) -> float:
        return self.s / self.n if self.n > 0 else 0.0


@dataclass
class PolicyState:
    per_arm: list[ArmStats]
    kind: str  # "ts" | "eps-ts"
    eps: float = 0.0

    def __post_init__(self):
        if self.kind not in ("ts", "eps-ts"):
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if not 0.0 <= self.eps < 1.0:
            raise ValueError(f"eps must lie in [0, 1), got {self.eps}")
        if len(self.per_arm) < 1:
            raise ValueError("need at least one arm")

    @classmethod
    def fresh(cls, n_arms: int, kind: str, eps: float = 0.0) -> "PolicyState":
        return cls([ArmStats(0, 0) for _ in range(n_arms)], kind, eps)

    @classmethod
    def parse(cls, spec: str, n_arms: int) -> "PolicyState":
        """Build from the config spelling ``ts`` or ``eps-ts:<eps>``."""
        spec = spec.strip()
        if spec == "ts":
            return cls.fresh(n_arms, "ts")
        if spec.startswith("eps-ts:"):
            return cls.fresh(n_arms, "eps-ts", float(spec.partition(":")[2]))
        raise ValueError(f"unknown policy spec {spec!r}")

    def spell(self) -> str:
        if self.kind == "ts":
            return "ts"
        return f"eps-ts:{self.eps:g}"

    @property
    def n_arms(self) -> int:
        return len(self.per_arm)


def posterior_params(s: int, n: int, eps: float) -> tuple[int, int]:
    """Scaled-posterior Beta parameters: alpha = floor(S/(1-eps)) + 1, beta = N+2-alpha.

    Only valid on the Beta branch, i.e. when S/N <= 1-eps (then alpha <= N+1
    and beta >= 1).  The floor carries a 1e-9 nudge so that ratios that are
    exact integers in real arithmetic are not pushed down by float rounding.
    """
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= S <= N, got S={s}, N={n}")
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps must lie in [0, 1), got {eps}")
    if n > 0 and s > (1.0 - eps) * n + _BRANCH_TOL:
        raise ValueError(
            f"Beta branch requires S/N <= 1-eps, got S={s}, N={n}, eps={eps}"
        )
    alpha = math.floor(s / (1.0 - eps) + _BRANCH_TOL) + 1
    alpha = min(alpha, n + 1)
    return alpha, n + 2 - alpha


def select(state: PolicyState, rng: RngStream) -> int:
    """Sample a score per arm and return a uniformly random maximizer.

    Does not mutate the state.  Exact float comparison is used for the
    argmax: ties among continuous draws have probability zero, and a
    tolerance would alter the selection law.
    """
    beta = rng.beta
    eps_ts = state.kind == "eps-ts"
    eps = state.eps
    scale = 1.0 - eps
    best = -1.0
    best_arms: list[int] = []
    floor = math.floor
    for a, stats in enumerate(state.per_arm):
        n = stats.n
        s = stats.s
        if eps_ts:
            if n > 0 and s > scale * n + _BRANCH_TOL:
                theta = s / n
            else:
                # Inlined posterior_params; the branch condition above already
                # guarantees alpha <= n + 1.
                alpha = floor(s / scale + _BRANCH_TOL) + 1
                if alpha > n + 1:
                    alpha = n + 1
                theta = scale * beta(alpha, n + 2 - alpha)
        else:
            theta = beta(s + 1, n - s + 1)
        if theta > best:
            best = theta
            best_arms = [a]
        elif theta == best:
            best_arms.append(a)
    if len(best_arms) == 1:
        return best_arms[0]
    return best_arms[rng.randint(len(best_arms))]


def update(state: PolicyState, arm: int, reward: int) -> PolicyState:
    """Record one observed reward for the pulled arm; other arms are untouched."""
    if not 0 <= arm < state.n_arms:
        raise IndexError(f"arm {arm} out of range for {state.n_arms} arms")
    if reward not in (0, 1):
        raise ValueError(f"reward must be 0 or 1, got {reward}")
    stats = state.per_arm[arm]
    stats.n += 1
    stats.s += reward
    return state
