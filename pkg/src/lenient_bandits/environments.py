"""Seeded stochastic bandit environments with {0, 1} rewards.

Rewards are always binary: Bernoulli arms draw them directly, bounded arms
draw a [0, 1]-valued reward and randomly round it to a Bernoulli bit with
the same mean, so Beta posteriors stay exact.

Randomness comes from :class:`RngStream`, a thin wrapper over NumPy's
Philox counter-based generator keyed through ``SeedSequence``.  Identical
(seed, stream) keys give identical draw sequences on every platform and
under any parallel schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = ["RngStream", "BanditInstance"]


class RngStream:
    """A splittable, reproducible random stream.

    One stream is owned by exactly one simulation at a time; streams with
    distinct (seed, stream) keys are statistically independent.
    """

    def __init__(self, seed: int, stream: int | tuple[int, ...] = 0):
        self.seed = int(seed)
        self.stream = (stream,) if isinstance(stream, int) else tuple(stream)
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream)
        self._gen = np.random.Generator(np.random.Philox(seq))
        # Hot-path aliases: scalar draws go straight to the generator.
        self.uniform = self._gen.random
        self.beta = self._gen.beta

    def uniform(self) -> float:  # noqa: F811 - overridden per-instance above
        return self._gen.random()

    def uniforms(self, shape) -> np.ndarray:
        return self._gen.random(shape)

    def beta(self, alpha: float, beta: float) -> float:
        return self._gen.beta(alpha, beta)

    def betas(self, alpha, beta, shape) -> np.ndarray:
        return self._gen.beta(alpha, beta, size=shape)

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return int(self._gen.integers(n))


@dataclass(frozen=True)
class BanditInstance:
    """Arm means in [0, 1] plus the reward-distribution kind.

    kind is ``bernoulli`` (default), or ``bounded-beta`` / ``bounded-point``
    for bounded rewards that are randomly rounded to bits.  For
    ``bounded-beta``, each arm's pre-rounding law is Beta(c*mu, c*(1-mu))
    with the concentration c = beta_a + beta_b taken from the config
    template, so the law's mean is exactly the arm mean.
    """

    means: tuple[float, ...]
    kind: str = "bernoulli"
    beta_a: float = 1.0
    beta_b: float = 1.0

    def __post_init__(self):
        if len(self.means) < 1:
            raise ValueError("need at least one arm")
        for m in self.means:
            if not 0.0 <= m <= 1.0:
                raise ValueError(f"arm mean must lie in [0, 1], got {m}")
        if self.kind not in ("bernoulli", "bounded-beta", "bounded-point"):
            raise ValueError(f"unknown reward kind {self.kind!r}")
        if self.kind == "bounded-beta" and (self.beta_a <= 0 or self.beta_b <= 0):
            raise ValueError("beta shape parameters must be positive")
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))

    @classmethod
    def parse_kind(cls, means: Sequence[float], kind_text: str) -> "BanditInstance":
        """Build from the config spelling ``bernoulli`` or ``bounded:beta(a,b)``."""
        text = kind_text.strip()
        if text == "bernoulli":
            return cls(tuple(means))
        if text == "bounded:point":
            return cls(tuple(means), kind="bounded-point")
        if text.startswith("bounded:beta(") and text.endswith(")"):
            inner = text[len("bounded:beta("):-1]
            parts = inner.split(",")
            if len(parts) != 2:
                raise ValueError(f"bad reward kind spec {kind_text!r}")
            a, b = float(parts[0]), float(parts[1])
            return cls(tuple(means), kind="bounded-beta", beta_a=a, beta_b=b)
        raise ValueError(f"unknown reward kind spec {kind_text!r}")

    @property
    def n_arms(self) -> int:
        return len(self.means)

    @property
    def mu_star(self) -> float:
        return max(self.means)

    def gap_of(self, arm: int) -> float:
        """Suboptimality gap of an arm: best mean minus the arm's mean."""
        self._check_arm(arm)
        return self.mu_star - self.means[arm]

    def gaps(self) -> tuple[float, ...]:
        mu = self.mu_star
        return tuple(mu - m for m in self.means)

    def pull(self, arm: int, rng: RngStream) -> int:
        """Draw one binary reward from the arm.

        Bernoulli arms consume one uniform.  Bounded arms consume one
        pre-rounding draw (beta kind only) plus one rounding uniform.
        """
        self._check_arm(arm)
        mean = self.means[arm]
        if self.kind == "bernoulli":
            return 1 if rng.uniform() < mean else 0
        if self.kind == "bounded-beta":
            x = self._bounded_beta_draw(arm, rng)
        else:  # bounded-point
            x = mean
        return 1 if rng.uniform() < x else 0

    def reward_table(self, n_pulls: int, rng: RngStream) -> np.ndarray:
        """Pre-draw rewards: entry [a, n] is the reward of arm a's n-th pull.

        Agrees in law with ``pull`` but consumes the stream in one vectorized
        pass per arm.  Using a shared table aligns environment noise across
        policies compared within one seed.
        """
        k = self.n_arms
        table = np.empty((k, n_pulls), dtype=np.int8)
        for a in range(k):
            mean = self.means[a]
            if self.kind == "bernoulli":
                table[a] = rng.uniforms(n_pulls) < mean
            elif self.kind == "bounded-beta":
                c = self.beta_a + self.beta_b
                if mean <= 0.0 or mean >= 1.0:
                    x = np.full(n_pulls, mean)
                else:
                    x = rng.betas(c * mean, c * (1.0 - mean), n_pulls)
                table[a] = rng.uniforms(n_pulls) < x
            else:  # bounded-point
                table[a] = rng.uniforms(n_pulls) < mean
        return table

    def _bounded_beta_draw(self, arm: int, rng: RngStream) -> float:
        mean = self.means[arm]
        if mean <= 0.0 or mean >= 1.0:
            return mean
        c = self.beta_a + self.beta_b
        return rng.beta(c * mean, c * (1.0 - mean))

    def _check_arm(self, arm: int) -> None:
        if not 0 <= arm < len(self.means):
            raise IndexError(f"arm {arm} out of range for {len(self.means)} arms")
