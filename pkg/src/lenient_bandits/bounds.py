"""Computable asymptotic regret-bound coefficients for Bernoulli instances.

Each coefficient is a sum over arms with gap strictly above eps of
f(gap) / denominator, where the denominator is a Bernoulli KL term that
depends on the bound:

    lower bound:   d(mu_a, mu* + eps)   (infinite when mu* + eps >= 1)
    eps-TS upper:  d(mu_a/(1-eps), mu*/(1-eps))
    standard TS:   d(mu_a, mu*)

An infinite denominator contributes a zero term, so sub-logarithmic and
constant-regret regimes yield a zero coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .environments import BanditInstance
from .gap_functions import GapFunction
from .kl_math import bernoulli_kl, kinf_bernoulli, scaled_kl

__all__ = [
    "BoundReport",
    "lower_bound_coefficient",
    "upper_bound_coefficient",
    "standard_ts_coefficient",
    "bound_ratio",
]


@dataclass(frozen=True)
class ArmTerm:
    arm: int
    mean: float
    gap: float
    f_gap: float
    denominator: float  # may be inf
    term: float


@dataclass(frozen=True)
class BoundReport:
    per_arm_terms: tuple[ArmTerm, ...]
    total: float


def _report(instance: BanditInstance, f: GapFunction, eps: float, denom) -> BoundReport:
    """Assemble the per-arm decomposition; ``denom(mean)`` gives the KL term."""
    terms = []
    total = 0.0
    for a, mean in enumerate(instance.means):
        gap = instance.gap_of(a)
        if gap <= eps:
            continue
        f_gap = f.evaluate(gap)
        d = denom(mean)
        term = 0.0 if math.isinf(d) else f_gap / d
        terms.append(ArmTerm(a, mean, gap, f_gap, d, term))
        total += term
    return BoundReport(tuple(terms), total)


def _gap_eps(f: GapFunction) -> float:
    # The standard gap function is the 0-gap function: every positive gap counts.
    return f.eps


def lower_bound_coefficient(instance: BanditInstance, f: GapFunction) -> BoundReport:
    """Asymptotic lower-bound coefficient for any consistent strategy.

    Total is 0 when mu* + eps >= 1, where identifying a good-enough arm is
    easy and the bound is sub-logarithmic.
    """
    eps = _gap_eps(f)
    target = instance.mu_star + eps
    return _report(instance, f, eps, lambda mean: kinf_bernoulli(mean, target))


def upper_bound_coefficient(instance: BanditInstance, f: GapFunction) -> BoundReport:
    """Asymptotic coefficient of the eps-variant policy's lenient regret.

    Total is 0 when mu* >= 1-eps (constant-regret regime: the denominators
    are infinite by the d(., 1) convention).
    """
    eps = _gap_eps(f)
    mu_star = instance.mu_star
    if mu_star >= 1.0 - eps:
        return _report(instance, f, eps, lambda mean: math.inf)
    return _report(instance, f, eps, lambda mean: scaled_kl(mean, mu_star, eps))


def standard_ts_coefficient(instance: BanditInstance, f: GapFunction) -> BoundReport:
    """Asymptotic coefficient shared by vanilla TS and KL-UCB."""
    eps = _gap_eps(f)
    mu_star = instance.mu_star
    if mu_star >= 1.0:
        raise ValueError("standard TS coefficient requires mu* < 1")
    return _report(instance, f, eps, lambda mean: bernoulli_kl(mean, mu_star))


def bound_ratio(instance: BanditInstance, f: GapFunction) -> float:
    """Ratio of the standard-TS coefficient to the eps-variant coefficient.

    ``inf`` when the eps coefficient is 0 with a positive TS coefficient
    (the constant-regret regime).  Undefined when both are 0.
    """
    if instance.n_arms < 2:
        raise ValueError("bound ratio needs two or more arms")
    standard = standard_ts_coefficient(instance, f).total
    upper = upper_bound_coefficient(instance, f).total
    if upper == 0.0:
        if standard == 0.0:
            raise ValueError("bound ratio undefined: both coefficients are 0")
        return math.inf
    return standard / upper
