"""Exact, greedy, and randomized search for maximum nice vertex subsets.

All three solvers reduce niceness to stability in the union graph and work on
bitmasks (bit ``v-1`` stands for vertex ``v``), so they are exact integer
computations with no floating point involved.
"""

from __future__ import annotations

from .errors import BudgetError
from .instance import Instance, NiceSetResult, is_nice, union_conflict_graph
from .rng import derive_seed, generator


def _adjacency_masks(inst: Instance) -> list[int]:
    """Union-graph adjacency as bitmasks, indexed 0..m-1."""
    adj = [0] * inst.m
    for u, v in union_conflict_graph(inst):
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return adj


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _clique_cover_bound(candidates: int, adj: list[int]) -> int:
    # A greedy clique cover of the candidate set: a stable set meets each
    # clique at most once, so the number of cliques bounds the stable size.
    remaining = candidates
    cliques = 0
    while remaining:
        v = (remaining & -remaining).bit_length() - 1
        grow = remaining & adj[v]
        clique = 1 << v
        while grow:
            u = (grow & -grow).bit_length() - 1
            clique |= 1 << u
            grow &= adj[u]
        remaining &= ~clique
        cliques += 1
    return cliques


def _min_degree_greedy(adj: list[int], m: int, rng=None) -> int:
    """Greedy stable set: repeatedly take a minimum-degree vertex of the
    residual graph and delete its closed neighborhood.  Ties go to the
    smallest index unless ``rng`` is given, in which case a uniformly random
    tied vertex is taken."""
    remaining = (1 << m) - 1
    chosen = 0
    while remaining:
        ties: list[int] = []
        best = m + 1
        for v in _bits(remaining):
            d = (adj[v] & remaining).bit_count()
            if d < best:
                best, ties = d, [v]
            elif d == best:
                ties.append(v)
        v = ties[0] if rng is None else int(ties[rng.integers(0, len(ties))])
        chosen |= 1 << v
        remaining &= ~(adj[v] | (1 << v))
    return chosen


def _mask_to_vertices(mask: int) -> frozenset[int]:
    return frozenset(v + 1 for v in _bits(mask))


def max_nice_exact(inst: Instance, node_budget: int = 5_000_000) -> NiceSetResult:
    """Maximum nice set by branch and bound on the union graph.

    Branches on a maximum-residual-degree vertex (in/out) and prunes with the
    greedy clique-cover bound.  Raises :class:`BudgetError` carrying the best
    set found when more than ``node_budget`` search nodes are expanded.
    """
    if node_budget <= 0:
        raise ValueError("node_budget must be positive")
    m = inst.m
    adj = _adjacency_masks(inst)
    best_mask = _min_degree_greedy(adj, m)
    best_size = best_mask.bit_count()
    nodes = 0

    def explore(candidates: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetError(
                f"exact search exceeded node budget {node_budget}",
                best_size=best_size, best_vertices=_mask_to_vertices(best_mask))
        if candidates == 0:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + _clique_cover_bound(candidates, adj) <= best_size:
            return
        pivot, pivot_deg = -1, -1
        for v in _bits(candidates):
            d = (adj[v] & candidates).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        bit = 1 << pivot
        explore(candidates & ~(adj[pivot] | bit), chosen | bit, size + 1)
        explore(candidates & ~bit, chosen, size)

    explore((1 << m) - 1, 0, 0)
    vertices = _mask_to_vertices(best_mask)
    assert is_nice(vertices, inst)
    return NiceSetResult(vertices=vertices, size=best_size, method="exact")


def greedy_nice(inst: Instance, tie_break: str = "smallest-index",
                seed: int | None = None) -> NiceSetResult:
    """Maximal (not necessarily maximum) nice set by residual min-degree greedy."""
    if tie_break not in ("smallest-index", "random"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    rng = generator(seed if seed is not None else 0) if tie_break == "random" else None
    mask = _min_degree_greedy(_adjacency_masks(inst), inst.m, rng=rng)
    vertices = _mask_to_vertices(mask)
    assert is_nice(vertices, inst)
    return NiceSetResult(vertices=vertices, size=len(vertices), method="greedy",
                         seed=seed if tie_break == "random" else None)


def randomized_nice(inst: Instance, max_restarts: int = 100, seed: int = 0) -> NiceSetResult:
    """Nice set found by the uniform randomized constructor.

    Scans target sizes ``L = m .. 1`` and, for each, runs the mutually-good
    constrained-set sampler on the instance's goodness system; the first size
    with a successful draw wins.  ``L = 1`` always succeeds, so a set is
    always returned.  Deterministic under ``seed``.
    """
    from .goodness import instance_system, randomized_construct

    system = instance_system(inst)
    for target in range(inst.m, 0, -1):
        found = randomized_construct(system, target, max_restarts=max_restarts,
                                     seed=derive_seed(seed, target))
        if found is not None:
            vertices = frozenset(found)
            assert is_nice(vertices, inst)
            return NiceSetResult(vertices=vertices, size=len(vertices),
                                 method="randomized", seed=seed)
    raise AssertionError("unreachable: singleton draws always succeed")
