"""Monte Carlo experiment engine behind the CLI.

Every experiment takes a master seed; trial ``t`` runs on
``derive_seed(master, t)``, so results are independent of trial count and
order, and reports are byte-identical across runs with the same seed.
Statistical margins are three binomial standard errors throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import (BoundParams, chernoff_bound, lower_size_threshold,
                     size_lower_bound, size_upper_bound, upper_size_threshold)
from .errors import BudgetError
from .goodness import (GoodnessSystem, brute_force_mutually_good, fraction_table,
                       instance_system)
from .instance import ConflictSpec, Instance, sample_instance
from .rng import derive_seed, generator
from .solvers import greedy_nice, max_nice_exact, randomized_nice

_SOLVERS = ("exact", "greedy", "randomized")


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of a bound experiment."""

    m: int
    p: float
    gamma: float = 1.0
    delta: float = 0.25
    conflicts: ConflictSpec = ConflictSpec()
    trials: int = 100
    seed: int = 0
    solver: str = "exact"
    node_budget: int = 5_000_000
    output_path: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.node_budget < 1:
            raise ValueError("node_budget must be positive")
        if self.solver not in _SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.solver == "exact" and self.m > 60:
            raise ValueError("the exact solver supports at most m = 60")
        # bound evaluation needs 0 < p < 1 even though the sampler allows the endpoints
        BoundParams(m=self.m, p=self.p, gamma=self.gamma, delta=self.delta)


@dataclass(frozen=True)
class BoundReport:
    """Empirical nice-set sizes against both size thresholds."""

    m: int
    p: float
    gamma: float
    delta: float
    trials: int
    solver: str
    master_seed: int
    seeds: tuple[int, ...]
    empirical: tuple[int, ...]
    tau_estimate: float
    tau_std: float
    threshold_upper: int
    threshold_lower: int
    frac_exceed_upper: float
    frac_below_lower: float
    stderr_exceed_upper: float
    stderr_below_lower: float
    claimed_upper_failure: float
    claimed_lower_failure: float

    def to_dict(self) -> dict:
        return {
            "m": self.m, "p": self.p, "gamma": self.gamma, "delta": self.delta,
            "trials": self.trials, "solver": self.solver,
            "master_seed": self.master_seed, "seeds": list(self.seeds),
            "empirical": list(self.empirical),
            "tau_estimate": self.tau_estimate, "tau_std": self.tau_std,
            "threshold_upper": self.threshold_upper,
            "threshold_lower": self.threshold_lower,
            "frac_exceed_upper": self.frac_exceed_upper,
            "frac_below_lower": self.frac_below_lower,
            "stderr_exceed_upper": self.stderr_exceed_upper,
            "stderr_below_lower": self.stderr_below_lower,
            "claimed_upper_failure": self.claimed_upper_failure,
            "claimed_lower_failure": self.claimed_lower_failure,
        }


def _binomial_stderr(fraction: float, trials: int) -> float:
    return math.sqrt(fraction * (1.0 - fraction) / trials)


def _solve(inst: Instance, solver: str, seed: int, node_budget: int) -> int:
    if solver == "exact":
        return max_nice_exact(inst, node_budget=node_budget).size
    if solver == "greedy":
        return greedy_nice(inst).size
    return randomized_nice(inst, seed=seed).size


def _run_bound_trials(cfg: ExperimentConfig) -> BoundReport:
    seeds, sizes, max_conflicts = [], [], []
    for t in range(cfg.trials):
        trial = derive_seed(cfg.seed, t)
        seeds.append(trial)
        inst = sample_instance(cfg.m, cfg.p, cfg.conflicts, seed=trial)
        try:
            sizes.append(_solve(inst, cfg.solver, seed=trial,
                                node_budget=cfg.node_budget))
        except BudgetError as exc:
            raise BudgetError(f"trial {t}: {exc}", best_size=exc.best_size,
                              best_vertices=exc.best_vertices) from exc
        max_conflicts.append(max(len(ts) for ts in inst.conflicts.values()))

    mean_max = sum(max_conflicts) / len(max_conflicts)
    # the empty-conflict fallback keeps tau in the formulas' domain
    tau = max(1.0, mean_max)
    tau_std = math.sqrt(sum((x - mean_max) ** 2 for x in max_conflicts) / len(max_conflicts))

    threshold_upper = upper_size_threshold(cfg.m, cfg.p, cfg.gamma)
    threshold_lower = lower_size_threshold(cfg.m, cfg.p, cfg.delta, tau)
    frac_up = sum(1 for s in sizes if s >= threshold_upper) / cfg.trials
    frac_lo = sum(1 for s in sizes if s < threshold_lower) / cfg.trials
    return BoundReport(
        m=cfg.m, p=cfg.p, gamma=cfg.gamma, delta=cfg.delta, trials=cfg.trials,
        solver=cfg.solver, master_seed=cfg.seed, seeds=tuple(seeds),
        empirical=tuple(sizes), tau_estimate=tau, tau_std=tau_std,
        threshold_upper=threshold_upper, threshold_lower=threshold_lower,
        frac_exceed_upper=frac_up, frac_below_lower=frac_lo,
        stderr_exceed_upper=_binomial_stderr(frac_up, cfg.trials),
        stderr_below_lower=_binomial_stderr(frac_lo, cfg.trials),
        claimed_upper_failure=size_upper_bound(
            BoundParams(m=cfg.m, p=cfg.p, gamma=cfg.gamma)).failure_prob,
        claimed_lower_failure=size_lower_bound(
            BoundParams(m=cfg.m, p=cfg.p, delta=cfg.delta, tau=tau)).failure_prob,
    )


def run_upper_bound_experiment(cfg: ExperimentConfig) -> BoundReport:
    """Sample ``trials`` instances and compare the fraction whose maximum
    nice-set size reaches the upper threshold against the claimed failure
    probability ``m**-gamma``."""
    return _run_bound_trials(cfg)


def run_lower_bound_experiment(cfg: ExperimentConfig) -> BoundReport:
    """As :func:`run_upper_bound_experiment`, read against the lower
    threshold: the fraction of trials falling below
    ``max(1, ceil(size_lower_bound))`` versus ``m**-delta``.  ``tau`` is
    estimated as the mean over trials of ``max_v |T(v)|`` (at least 1)."""
    return _run_bound_trials(cfg)


@dataclass(frozen=True)
class LemmaReport:
    """Existence sweep outcome; sound iff ``counterexamples`` is empty."""

    count: int
    n_max: int
    seed: int
    systems_checked: int
    conditions_fired: int
    counterexamples: tuple

    def to_dict(self) -> dict:
        return {
            "count": self.count, "n_max": self.n_max, "seed": self.seed,
            "systems_checked": self.systems_checked,
            "conditions_fired": self.conditions_fired,
            "counterexamples": [dict(c) for c in self.counterexamples],
        }


def existence_violations(system: GoodnessSystem) -> tuple[list[dict], int]:
    """For every ``L`` with exact ``p[L-1] > q[L-1]``, require a mutually good
    constrained set of cardinality ``L`` by brute force.

    Returns the violations (each a dict with the failing ``L`` and the
    fractions) and the number of cardinalities at which the condition fired.
    """
    n = system.size
    if n < 2:
        return [], 0
    table = fraction_table(system, n - 1)
    fired = 0
    violations: list[dict] = []
    for L in range(2, n + 1):
        p_prev, q_prev = table.p_at(L - 1), table.q_at(L - 1)
        if p_prev > q_prev:
            fired += 1
            if brute_force_mutually_good(system, L) is None:
                violations.append({"L": L, "p": str(p_prev), "q": str(q_prev), "N": n})
    return violations, fired


def run_lemma_verification(count: int, n_max: int = 8, seed: int = 0) -> LemmaReport:
    """Sweep ``count`` random instance systems (random edges plus random
    symmetric conflict families, with the conflict-avoidance constraint) and
    check the existence guarantee at every cardinality where it applies."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if not 2 <= n_max <= 10:
        raise ValueError("n_max must lie in 2..10")
    all_violations: list[dict] = []
    fired_total = 0
    for k in range(count):
        rng = generator(derive_seed(seed, k))
        n = int(rng.integers(2, n_max + 1))
        p = float(rng.uniform(0.05, 0.95))
        k_conflict = int(rng.integers(0, min(3, n)))
        spec = ConflictSpec.uniform(k_conflict) if k_conflict else ConflictSpec.none()
        inst = sample_instance(n, p, spec, seed=derive_seed(seed, k, 1))
        violations, fired = existence_violations(instance_system(inst))
        for record in violations:
            record["system_index"] = k
        all_violations.extend(violations)
        fired_total += fired
    return LemmaReport(count=count, n_max=n_max, seed=seed, systems_checked=count,
                       conditions_fired=fired_total,
                       counterexamples=tuple(tuple(v.items()) for v in all_violations))


@dataclass(frozen=True)
class ChernoffReport:
    """Empirical Bernoulli-sum deviation frequency against the closed-form
    bound and the exact binomial tail."""

    r: int
    p: float
    gamma: float
    trials: int
    seed: int
    theta: float
    deviation: float
    empirical: float
    stderr: float
    bound: float
    exact_tail: float
    within_bound: bool
    consistent_with_exact: bool

    def to_dict(self) -> dict:
        return {
            "r": self.r, "p": self.p, "gamma": self.gamma, "trials": self.trials,
            "seed": self.seed, "theta": self.theta, "deviation": self.deviation,
            "empirical": self.empirical, "stderr": self.stderr, "bound": self.bound,
            "exact_tail": self.exact_tail, "within_bound": self.within_bound,
            "consistent_with_exact": self.consistent_with_exact,
        }


def binomial_deviation_tail(r: int, p: float, deviation: float) -> float:
    """``P(|S - r*p| >= deviation)`` for ``S ~ Binomial(r, p)``, by direct
    summation of the probability mass function."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    theta = r * p
    return float(sum(math.comb(r, k) * p ** k * (1.0 - p) ** (r - k)
                     for k in range(r + 1) if abs(k - theta) >= deviation))


def run_chernoff_check(r: int, bernoulli_p: float, gamma: float, trials: int,
                       seed: int = 0) -> ChernoffReport:
    """Simulate ``trials`` Bernoulli sums of length ``r`` and compare the
    frequency of relative deviations of at least ``gamma`` with the
    closed-form bound and with the exact binomial tail."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    theta = r * bernoulli_p
    bound = chernoff_bound(theta, gamma)  # validates gamma and theta
    deviation = theta * gamma
    rng = generator(seed)
    sums = rng.binomial(r, bernoulli_p, size=trials)
    hits = int((abs(sums - theta) >= deviation).sum())
    empirical = hits / trials
    stderr = _binomial_stderr(empirical, trials)
    exact = binomial_deviation_tail(r, bernoulli_p, deviation)
    exact_stderr = _binomial_stderr(exact, trials)
    return ChernoffReport(
        r=r, p=bernoulli_p, gamma=gamma, trials=trials, seed=seed,
        theta=theta, deviation=deviation, empirical=empirical, stderr=stderr,
        bound=bound, exact_tail=exact,
        within_bound=empirical <= bound + 3.0 * stderr,
        consistent_with_exact=abs(empirical - exact) <= 3.0 * max(exact_stderr, stderr),
    )
