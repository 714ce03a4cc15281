"""Closed-form size bounds for maximum nice subsets, and a Bernoulli-sum
deviation bound.

All formulas are ratios of same-base logarithms, so the base is irrelevant;
natural logarithms are used throughout.  ``p in {0, 1}`` is rejected here
(division by ``|log(1-p)| = 0``, or an undefined logarithm) even though the
sampler accepts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BoundParams:
    """Parameter bundle for the size-bound formulas.

    ``gamma`` controls the upper bound's slack, ``delta`` the lower bound's;
    ``tau`` is the (expected) maximum conflict-set size, at least 1.
    ``delta1``/``delta2`` are the growth-condition exponents and must satisfy
    ``2*delta1 + delta2 < 1``.
    """

    m: int
    p: float
    gamma: float = 1.0
    delta: float = 0.25
    delta1: float = 0.25
    delta2: float = 0.25
    tau: float = 1.0

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie strictly between 0 and 1")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if not 0.0 < self.delta < 0.5:
            raise ValueError("delta must lie in (0, 1/2)")
        if not (0.0 < self.delta1 < 1.0 and 0.0 < self.delta2 < 1.0):
            raise ValueError("delta1 and delta2 must lie in (0, 1)")
        if not 2.0 * self.delta1 + self.delta2 < 1.0:
            raise ValueError("need 2*delta1 + delta2 < 1")
        if self.tau < 1.0:
            raise ValueError("tau must be at least 1")


@dataclass(frozen=True)
class BoundValue:
    """A bound together with the probability that it fails to hold."""

    value: float
    failure_prob: float


def _log_odds_rate(p: float) -> float:
    # |log(1-p)|, via log1p for accuracy at small p.
    return -math.log1p(-p)


def size_upper_bound(params: BoundParams) -> BoundValue:
    """High-probability upper bound ``(2+gamma) * log(m) / |log(1-p)|``.

    The maximum nice-set size exceeds this value with probability at most
    ``m**-gamma`` (the returned failure probability).
    """
    value = (2.0 + params.gamma) * math.log(params.m) / _log_odds_rate(params.p)
    return BoundValue(value=value, failure_prob=params.m ** -params.gamma)


def size_lower_bound(params: BoundParams) -> BoundValue:
    """High-probability lower bound
    ``(1-2*delta) * log(m)/|log(1-p)| - log(4*tau/p)/|log(1-p)|``.

    May be negative at desk scale; callers clamp to 1 for empirical
    comparison.  Fails with probability at most ``m**-delta``.
    """
    rate = _log_odds_rate(params.p)
    value = ((1.0 - 2.0 * params.delta) * math.log(params.m)
             - math.log(4.0 * params.tau / params.p)) / rate
    return BoundValue(value=value, failure_prob=params.m ** -params.delta)


def chernoff_bound(theta_r: float, gamma: float) -> float:
    """Bound ``2*exp(-gamma**2 * theta_r / 4)`` on the probability that a sum
    of independent Bernoulli variables with mean ``theta_r`` deviates from it
    by at least ``theta_r * gamma``.  Requires ``0 < gamma <= 1/2``."""
    if not 0.0 < gamma <= 0.5:
        raise ValueError("gamma must lie in (0, 1/2]")
    if theta_r <= 0.0:
        raise ValueError("theta_r must be positive")
    return 2.0 * math.exp(-gamma * gamma * theta_r / 4.0)


def upper_size_threshold(m: int, p: float, gamma: float) -> int:
    """Integer threshold ``ceil(1 + (2+gamma) * log(m)/|log(1-p)|)``.

    Uses the form with the additive 1, which is the threshold at which the
    exceedance probability ``m**-gamma`` is actually guaranteed.
    """
    params = BoundParams(m=m, p=p, gamma=gamma)
    return math.ceil(1.0 + (2.0 + params.gamma) * math.log(params.m) / _log_odds_rate(params.p))


def lower_size_threshold(m: int, p: float, delta: float, tau: float) -> int:
    """Integer threshold ``max(1, ceil(size_lower_bound))`` for empirical use."""
    value = size_lower_bound(BoundParams(m=m, p=p, delta=delta, tau=tau)).value
    return max(1, math.ceil(value))
