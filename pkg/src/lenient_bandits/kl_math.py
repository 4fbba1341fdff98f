"""Bernoulli KL divergence, its scaled variant, and Beta/Binomial CDF utilities.

All functions are pure and operate on plain floats.  Degenerate inputs never
produce NaN: they map to 0.0 or ``math.inf`` following the usual conventions
for Bernoulli divergences (0*ln 0 = 0; d(p, q) = inf when p < 1 and q >= 1,
or when p > 0 and q = 0).
"""

from __future__ import annotations

import math

__all__ = [
    "bernoulli_kl",
    "scaled_kl",
    "kinf_bernoulli",
    "kl_equation_solve",
    "beta_cdf",
    "binomial_cdf",
]

_BISECT_TOL = 1e-12
_BISECT_MAX_ITER = 200


def _check_prob(x: float, name: str) -> None:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def bernoulli_kl(p: float, q: float) -> float:
    """KL divergence d(p, q) between Bernoulli(p) and Bernoulli(q).

    Returns ``inf`` when p < 1 and q >= 1, or when p > 0 and q = 0.
    Vanishing summands (p = 0 or p = 1) are dropped, so the result is
    always a nonnegative float, never NaN.
    """
    _check_prob(p, "p")
    _check_prob(q, "q")
    return _bernoulli_kl_unchecked(p, q)


def _bernoulli_kl_unchecked(p: float, q: float) -> float:
    if p == q:
        return 0.0
    if q >= 1.0:
        # p < 1 here since p != q
        return math.inf if p < 1.0 else 0.0
    if q <= 0.0:
        return math.inf if p > 0.0 else 0.0
    out = 0.0
    if p > 0.0:
        out += p * math.log(p / q)
    if p < 1.0:
        out += (1.0 - p) * math.log((1.0 - p) / (1.0 - q))
    # Guard against -0.0 / tiny negative rounding near p == q.
    return out if out > 0.0 else 0.0


def scaled_kl(p: float, q: float, eps: float) -> float:
    """d(p/(1-eps), q/(1-eps)): KL of the means rescaled to the [0, 1-eps] range.

    Requires eps < 1 and p <= 1-eps (the first argument must stay a
    probability after scaling).  The second argument may scale above 1, in
    which case the divergence is ``inf`` (no scaled Bernoulli has that mean).
    """
    _check_prob(p, "p")
    _check_prob(q, "q")
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps must lie in [0, 1), got {eps}")
    scale = 1.0 - eps
    ps = p / scale
    if ps > 1.0:
        raise ValueError(f"p={p} exceeds 1-eps={scale}; not a probability after scaling")
    qs = q / scale
    if qs >= 1.0:
        if ps >= 1.0:
            return 0.0
        return math.inf
    return _bernoulli_kl_unchecked(ps, qs)


def kinf_bernoulli(mu: float, x: float) -> float:
    """Minimal KL from Bernoulli(mu) to a bounded-reward law with mean above x.

    For Bernoulli arms this is d(mu, x), and ``inf`` when x >= 1 since no
    distribution on [0, 1] has mean above 1.
    """
    _check_prob(mu, "mu")
    if x >= 1.0:
        return math.inf
    if x < 0.0:
        raise ValueError(f"x must be nonnegative, got {x}")
    return _bernoulli_kl_unchecked(mu, x)


def kl_equation_solve(p: float, q: float, eps: float, c: float) -> float:
    """Solve d(x/(1-eps), q/(1-eps)) = d(p/(1-eps), q/(1-eps)) / (1+c) for x in [p, q].

    The scaled KL is strictly decreasing in its first argument below q, so
    the root is unique; plain bisection converges unconditionally.
    Requires 0 <= p < q < 1-eps and c > 0.
    """
    _check_prob(p, "p")
    _check_prob(q, "q")
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps must lie in [0, 1), got {eps}")
    if not p < q < 1.0 - eps:
        raise ValueError(f"need 0 <= p < q < 1-eps, got p={p}, q={q}, eps={eps}")
    if c <= 0.0:
        raise ValueError(f"c must be positive, got {c}")

    target = scaled_kl(p, q, eps) / (1.0 + c)
    lo, hi = p, q
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if scaled_kl(mid, q, eps) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo < _BISECT_TOL:
            break
    return 0.5 * (lo + hi)


def binomial_cdf(n: int, p: float, k: int) -> float:
    """P(X <= k) for X ~ Binomial(n, p).

    Uses the log-space pdf recurrence f(j+1) = f(j) * (n-j)/(j+1) * p/(1-p),
    summed via log-sum-exp, so it stays stable up to n ~ 1e6 without
    factorial overflow.  Out-of-range k clamps to 0 or 1.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    _check_prob(p, "p")
    if k < 0:
        return 0.0
    if k >= n:
        return 1.0
    if p <= 0.0:
        return 1.0
    if p >= 1.0:
        return 0.0  # k < n here

    log_ratio = math.log(p) - math.log1p(-p)
    log_f = n * math.log1p(-p)  # log f(0)
    log_terms = [log_f]
    for j in range(k):
        log_f += math.log((n - j) / (j + 1.0)) + log_ratio
        log_terms.append(log_f)
    m = max(log_terms)
    total = m + math.log(math.fsum(math.exp(t - m) for t in log_terms))
    return min(1.0, math.exp(total))


def beta_cdf(alpha: int, beta: int, x: float) -> float:
    """Regularized incomplete Beta for integer parameters alpha, beta >= 1.

    Evaluated through the Beta-Binomial identity
    F_Beta(alpha, beta; x) = 1 - F_Bin(alpha+beta-1, x; alpha-1).
    """
    if alpha < 1 or beta < 1:
        raise ValueError(f"alpha and beta must be integers >= 1, got {alpha}, {beta}")
    _check_prob(x, "x")
    return 1.0 - binomial_cdf(alpha + beta - 1, x, alpha - 1)
