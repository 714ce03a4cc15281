"""Goodness systems: mutually good sets, element constraints, worst-case
fractions, existence oracles, and the uniform randomized constructor.

A *goodness function* ``f`` maps subsets of a finite universe ``U`` to
subsets of ``U`` and satisfies two axioms:

* symmetry:      ``S1 <= f(S2)``  iff  ``S2 <= f(S1)``,
* intersection:  ``f(S1 | S2) == f(S1) & f(S2)``,

with the convention ``f(empty) == U``.  A set ``S`` is *mutually good* when
``S - I <= f(I)`` for every proper subset ``I`` of ``S``; under the axioms
this is equivalent to the pairwise condition ``x in f({y})`` for all distinct
``x, y in S``, which is what :func:`is_mutually_good` checks.

A *constraint* is a map ``g(x, I)`` into a value set ``E`` with an accepting
subset ``B``; ``I`` is *B-constrained* when ``g(y, I - {y}) in B`` for every
``y in I``, and ``h(I)`` collects the elements whose constraint value with
respect to ``I`` is not accepted.

:func:`compute_p` and :func:`compute_q` enumerate the worst-case fraction of
good (resp. constraint-violating) elements over B-constrained sets of bounded
size, as exact rationals.  When ``p[L-1] > q[L-1]`` a mutually good
B-constrained set of cardinality ``L`` exists; :func:`randomized_construct`
finds one by uniform sampling and :func:`brute_force_mutually_good` by
exhaustive search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import BudgetError
from .instance import Instance
from .rng import generator


@dataclass(frozen=True)
class GoodnessSystem:
    """A finite universe with a goodness function and an element constraint.

    ``f`` and ``g`` are callables over frozensets; ``values`` is the
    constraint's codomain and ``accepting`` the subset of values that count
    as satisfied.  ``f(empty) == universe`` is enforced at construction; the
    two goodness axioms are the caller's responsibility (see
    :func:`check_goodness_axioms`).
    """

    universe: tuple
    f: Callable[[frozenset], frozenset]
    g: Callable[[object, frozenset], object]
    values: frozenset
    accepting: frozenset

    def __post_init__(self):
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("universe contains duplicates")
        if not self.universe:
            raise ValueError("universe must be non-empty")
        if not self.accepting <= self.values:
            raise ValueError("accepting values must be a subset of the value set")
        if self.f(frozenset()) != frozenset(self.universe):
            raise ValueError("f(empty set) must equal the whole universe")

    @property
    def size(self) -> int:
        return len(self.universe)


def system_from_singletons(universe: Iterable, singleton_good: Mapping,
                           g: Callable[[object, frozenset], object],
                           values: Iterable, accepting: Iterable) -> GoodnessSystem:
    """Build a system whose ``f`` is derived from its singleton values by
    intersection: ``f(I) = intersection of f({v}) over v in I``.

    Any such ``f`` satisfies the intersection axiom by construction; the
    symmetry axiom holds exactly when ``x in f({y})  iff  y in f({x})``.
    Avoids materializing all ``2**N`` subsets.
    """
    elements = tuple(universe)
    full = frozenset(elements)
    good = {v: frozenset(singleton_good[v]) for v in elements}

    def f(subset: frozenset) -> frozenset:
        result = full
        for v in subset:
            result &= good[v]
        return result

    return GoodnessSystem(universe=elements, f=f, g=g,
                          values=frozenset(values), accepting=frozenset(accepting))


def graph_system(adjacency: Mapping[int, Iterable[int]]) -> GoodnessSystem:
    """Non-adjacency system on a graph.

    ``f(S)`` is the set of vertices adjacent to no vertex of ``S`` (a vertex
    of ``S`` itself belongs to ``f(S)`` when it has no neighbor in ``S``);
    ``g(x, I)`` is 1 when ``x`` has no neighbor in ``I`` and 0 otherwise,
    with accepted value 1.  Mutually good and constrained both reduce to
    stability here.
    """
    vertices = tuple(sorted(adjacency))
    neighbors = {v: frozenset(adjacency[v]) for v in vertices}
    for v, ns in neighbors.items():
        for u in ns:
            if v not in neighbors.get(u, frozenset()):
                raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    def g(x, chosen: frozenset):
        return 0 if neighbors[x] & chosen else 1

    singleton_good = {v: frozenset(u for u in vertices if v not in neighbors[u])
                      for v in vertices}
    return system_from_singletons(vertices, singleton_good, g, values={0, 1}, accepting={1})


def instance_system(inst: Instance) -> GoodnessSystem:
    """Goodness system of a model instance.

    Goodness is non-adjacency in the collinearity edges.  The constraint
    value of ``x`` with respect to chosen set ``I`` is 1 when ``x`` lies in
    some chosen vertex's closed conflict set ``T(v) | {v}``, and the accepted
    value is 0: an accepted element avoids every chosen vertex and all of
    their conflict partners.  A set is mutually good and constrained here
    exactly when it is nice in ``inst``.
    """
    vertices = tuple(range(1, inst.m + 1))
    closed = {v: inst.conflicts[v] | {v} for v in vertices}

    def g(x, chosen: frozenset):
        return 1 if any(x in closed[v] for v in chosen) else 0

    singleton_good = {v: frozenset(u for u in vertices if not inst.has_edge(u, v) or u == v)
                      for v in vertices}
    return system_from_singletons(vertices, singleton_good, g, values={0, 1}, accepting={0})


def good_set(system: GoodnessSystem, s: Iterable) -> frozenset:
    """``f(s)``: the elements good with respect to ``s``."""
    return system.f(frozenset(s))


def is_mutually_good(system: GoodnessSystem, s: Iterable) -> bool:
    """Pairwise test: every element of ``s`` is good for every other one."""
    members = list(frozenset(s))
    singles = {y: system.f(frozenset([y])) for y in members}
    return all(x in singles[y] for x in members for y in members if x != y)


def is_constrained(system: GoodnessSystem, s: Iterable) -> bool:
    """True iff ``g(y, s - {y})`` is accepted for every ``y in s``."""
    members = frozenset(s)
    return all(system.g(y, members - {y}) in system.accepting for y in members)


def h_set(system: GoodnessSystem, i_set: Iterable) -> frozenset:
    """Elements whose constraint value with respect to ``i_set`` is rejected."""
    chosen = frozenset(i_set)
    return frozenset(x for x in system.universe
                     if system.g(x, chosen) not in system.accepting)


class _MaskView:
    """Bitmask lens over a system for exhaustive enumeration.

    Element ``universe[i]`` is bit ``i``.  ``f``, ``h`` and constrainedness
    are memoized per subset mask, so enumerations touch each subset's
    callables once.
    """

    def __init__(self, system: GoodnessSystem):
        self.system = system
        self.elements = system.universe
        self.index = {v: i for i, v in enumerate(self.elements)}
        self.full = (1 << len(self.elements)) - 1
        self._subset: dict[int, frozenset] = {}
        self._f: dict[int, int] = {}
        self._h: dict[int, int] = {}
        self._constrained: dict[int, bool] = {}

    def subset(self, mask: int) -> frozenset:
        got = self._subset.get(mask)
        if got is None:
            got = frozenset(self.elements[i] for i in range(len(self.elements))
                            if mask >> i & 1)
            self._subset[mask] = got
        return got

    def to_mask(self, s: Iterable) -> int:
        mask = 0
        for v in s:
            mask |= 1 << self.index[v]
        return mask

    def f_mask(self, mask: int) -> int:
        got = self._f.get(mask)
        if got is None:
            got = self.to_mask(self.system.f(self.subset(mask)))
            self._f[mask] = got
        return got

    def h_mask(self, mask: int) -> int:
        got = self._h.get(mask)
        if got is None:
            chosen = self.subset(mask)
            accepted = self.system.accepting
            got = 0
            for i, x in enumerate(self.elements):
                if self.system.g(x, chosen) not in accepted:
                    got |= 1 << i
            self._h[mask] = got
        return got

    def constrained(self, mask: int) -> bool:
        got = self._constrained.get(mask)
        if got is None:
            got = all(not (self.h_mask(mask & ~(1 << i)) >> i & 1)
                      for i in range(len(self.elements)) if mask >> i & 1)
            self._constrained[mask] = got
        return got


def _enumeration_size(n: int, i: int) -> int:
    return sum(math.comb(n, j) for j in range(i + 1))


def _sweep_constrained(view: _MaskView, up_to: int, max_subsets: int):
    """Yield ``(size, mask)`` for every B-constrained subset of size <= up_to."""
    n = len(view.elements)
    if _enumeration_size(n, up_to) > max_subsets:
        raise BudgetError(
            f"enumerating subsets of size <= {up_to} over {n} elements "
            f"exceeds the budget of {max_subsets}")
    yield 0, 0
    for size in range(1, up_to + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if view.constrained(mask):
                yield size, mask


def compute_p(system: GoodnessSystem, i: int, max_subsets: int = 2_000_000) -> Fraction:
    """Worst-case good fraction: the minimum of ``|f(I)| / N`` over all
    B-constrained sets ``I`` with ``|I| <= i`` (the empty set included), by
    exhaustive enumeration."""
    if not 1 <= i <= system.size:
        raise ValueError("i must lie in 1..N")
    view = _MaskView(system)
    n = system.size
    best = Fraction(1)
    for _, mask in _sweep_constrained(view, i, max_subsets):
        best = min(best, Fraction(view.f_mask(mask).bit_count(), n))
    return best


def compute_q(system: GoodnessSystem, i: int, max_subsets: int = 2_000_000) -> Fraction:
    """Worst-case violating fraction: the maximum of ``|h(I)| / N`` over all
    B-constrained sets ``I`` with ``|I| <= i``, by exhaustive enumeration."""
    if not 1 <= i <= system.size:
        raise ValueError("i must lie in 1..N")
    view = _MaskView(system)
    n = system.size
    worst = Fraction(0)
    for _, mask in _sweep_constrained(view, i, max_subsets):
        worst = max(worst, Fraction(view.h_mask(mask).bit_count(), n))
    return worst


@dataclass(frozen=True)
class FractionTable:
    """Exact fractions ``p_1..p_L`` and ``q_1..q_L``.

    ``p`` is non-increasing and ``q`` non-decreasing by definition; both are
    validated.  ``exact`` records whether the entries came from exhaustive
    enumeration (as opposed to analytic bounds supplied by the caller).
    """

    p: tuple
    q: tuple
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(Fraction(x) for x in self.p))
        object.__setattr__(self, "q", tuple(Fraction(x) for x in self.q))
        if len(self.p) != len(self.q):
            raise ValueError("p and q must have the same length")
        if any(a < b for a, b in zip(self.p, self.p[1:])):
            raise ValueError("p must be non-increasing")
        if any(a > b for a, b in zip(self.q, self.q[1:])):
            raise ValueError("q must be non-decreasing")

    def p_at(self, i: int) -> Fraction:
        """``p_i`` (1-based)."""
        return self.p[i - 1]

    def q_at(self, i: int) -> Fraction:
        """``q_i`` (1-based)."""
        return self.q[i - 1]


def fraction_table(system: GoodnessSystem, up_to: int,
                   max_subsets: int = 2_000_000) -> FractionTable:
    """Exact ``p_i``/``q_i`` for ``i = 1..up_to`` in a single enumeration."""
    if not 1 <= up_to <= system.size:
        raise ValueError("up_to must lie in 1..N")
    view = _MaskView(system)
    n = system.size
    min_f = [Fraction(1)] * (up_to + 1)
    max_h = [Fraction(0)] * (up_to + 1)
    for size, mask in _sweep_constrained(view, up_to, max_subsets):
        min_f[size] = min(min_f[size], Fraction(view.f_mask(mask).bit_count(), n))
        max_h[size] = max(max_h[size], Fraction(view.h_mask(mask).bit_count(), n))
    p, q = [], []
    running_p, running_q = Fraction(1), Fraction(0)
    for size in range(1, up_to + 1):
        running_p = min(running_p, min_f[size])
        running_q = max(running_q, max_h[size])
        p.append(running_p)
        q.append(running_q)
    return FractionTable(p=tuple(p), q=tuple(q), exact=True)


def construction_success_bound(table: FractionTable, L: int,
                               q1: Fraction | float | None = None) -> Fraction:
    """Iterated success bound ``prod_{j=2}^{L-1} (p_j - q_j) * (1 - q_1)``.

    By the convention that a single element is always a mutually good
    constrained set, the leading factor ``(1 - q_1)`` is taken as 1 unless
    the caller overrides ``q1``.  Each factor is clamped below at 0 (one
    exhausted factor makes the iterated bound vacuous, so the product must
    not recover sign).
    """
    if L < 2:
        raise ValueError("L must be at least 2")
    if L >= 3 and len(table.p) < L - 1:
        raise ValueError(f"table must cover indices up to {L - 1}")
    bound = max(Fraction(0), 1 - Fraction(q1 if q1 is not None else 0))
    for j in range(2, L):
        bound *= max(Fraction(0), table.p_at(j) - table.q_at(j))
    return bound


def attempt_success_bound(table: FractionTable, n_universe: int, L: int) -> Fraction:
    """Per-attempt success bound for :func:`randomized_construct`:

    ``(1 - q_1) * prod_{j=1}^{L-1} max(0, p_j - q_j - j/N)``.

    Unlike :func:`construction_success_bound` this charges for the first
    element (definitional ``p_1``/``q_1``) and for drawing an element already
    chosen (the ``j/N`` term), so it lower-bounds the probability that a
    single batch of ``L`` uniform draws is distinct, mutually good, and
    constrained.  Valid on systems where adding a good, constraint-satisfying
    element never breaks the previously chosen elements' constraints; the
    graph and instance systems both have this property.
    """
    if L < 2:
        raise ValueError("L must be at least 2")
    if len(table.p) < L - 1:
        raise ValueError(f"table must cover indices up to {L - 1}")
    bound = max(Fraction(0), 1 - table.q_at(1))
    for j in range(1, L):
        bound *= max(Fraction(0), table.p_at(j) - table.q_at(j) - Fraction(j, n_universe))
    return bound


def randomized_construct(system: GoodnessSystem, L: int, max_restarts: int,
                         seed: int = 0) -> frozenset | None:
    """Try to draw a mutually good B-constrained set of cardinality ``L``.

    Each attempt draws ``L`` elements i.i.d. uniformly from the universe and
    succeeds iff they are pairwise distinct and the resulting set is mutually
    good and B-constrained.  Returns the first success within
    ``max_restarts`` attempts, else ``None``.  Deterministic under ``seed``.
    """
    if not 1 <= L <= system.size:
        raise ValueError("L must lie in 1..N")
    if max_restarts < 1:
        raise ValueError("max_restarts must be at least 1")
    rng = generator(seed)
    for _ in range(max_restarts):
        draws = rng.integers(0, system.size, size=L)
        if len(set(draws.tolist())) < L:
            continue
        candidate = frozenset(system.universe[i] for i in draws.tolist())
        if is_mutually_good(system, candidate) and is_constrained(system, candidate):
            return candidate
    return None


def brute_force_mutually_good(system: GoodnessSystem, L: int,
                              max_subsets: int = 2_000_000) -> frozenset | None:
    """First mutually good B-constrained set of cardinality exactly ``L`` in
    lexicographic universe order, or ``None`` if none exists."""
    if not 0 <= L <= system.size:
        raise ValueError("L must lie in 0..N")
    if math.comb(system.size, L) > max_subsets:
        raise BudgetError(f"C({system.size}, {L}) exceeds the budget of {max_subsets}")
    for combo in combinations(system.universe, L):
        candidate = frozenset(combo)
        if is_mutually_good(system, candidate) and is_constrained(system, candidate):
            return candidate
    return None


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str  # "symmetry" or "intersection"
    s1: frozenset
    s2: frozenset


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of a goodness-axiom check; ``ok`` iff no violations."""

    checked_pairs: int
    violations: tuple = field(default_factory=tuple)
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations and not self.truncated


_MAX_RECORDED_VIOLATIONS = 50


def check_goodness_axioms(system: GoodnessSystem, mode: str = "exhaustive",
                          samples: int = 2000, seed: int = 0) -> AxiomReport:
    """Verify the symmetry and intersection axioms over subset pairs.

    ``mode="exhaustive"`` checks all unordered pairs (requires ``N <= 12``);
    ``mode="sampled"`` checks ``samples`` uniformly drawn pairs.  The report
    lists violating pairs, truncated after the first 50.
    """
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    n = system.size
    view = _MaskView(system)
    total = 1 << n

    if mode == "exhaustive":
        if n > 12:
            raise ValueError("exhaustive mode requires N <= 12")
        f = np.array([view.f_mask(mask) for mask in range(total)], dtype=np.int64)
        all_masks = np.arange(total, dtype=np.int64)
        not_f = ~f
        violations: list[AxiomViolation] = []
        checked = 0
        for a in range(total):
            rest = all_masks[a:]
            checked += rest.size
            # symmetry: (a <= f[b]) must agree with (b <= f[a])
            a_in_fb = (a & not_f[a:]) == 0
            b_in_fa = (rest & not_f[a]) == 0
            bad_sym = np.nonzero(a_in_fb != b_in_fa)[0]
            # intersection: f[a | b] == f[a] & f[b]
            bad_int = np.nonzero(f[a | rest] != (f[a] & f[a:]))[0]
            for idx in bad_sym:
                violations.append(AxiomViolation("symmetry", view.subset(a),
                                                 view.subset(int(rest[idx]))))
            for idx in bad_int:
                violations.append(AxiomViolation("intersection", view.subset(a),
                                                 view.subset(int(rest[idx]))))
            if len(violations) > _MAX_RECORDED_VIOLATIONS:
                return AxiomReport(checked_pairs=checked,
                                   violations=tuple(violations[:_MAX_RECORDED_VIOLATIONS]),
                                   truncated=True)
        return AxiomReport(checked_pairs=checked, violations=tuple(violations))

    rng = generator(seed)
    violations = []
    for _ in range(samples):
        a = int(rng.integers(0, total))
        b = int(rng.integers(0, total))
        fa, fb = view.f_mask(a), view.f_mask(b)
        if ((a & ~fb) == 0) != ((b & ~fa) == 0):
            violations.append(AxiomViolation("symmetry", view.subset(a), view.subset(b)))
        if view.f_mask(a | b) != fa & fb:
            violations.append(AxiomViolation("intersection", view.subset(a), view.subset(b)))
        if len(violations) > _MAX_RECORDED_VIOLATIONS:
            return AxiomReport(checked_pairs=samples,
                               violations=tuple(violations[:_MAX_RECORDED_VIOLATIONS]),
                               truncated=True)
    return AxiomReport(checked_pairs=samples, violations=tuple(violations))
