"""Solver correctness: exact against enumeration, greedy traces, randomized."""

import pytest
from hypothesis import given, settings, strategies as st

from niceset import (BudgetError, ConflictSpec, Instance, derive_seed, greedy_nice,
                     is_nice, max_nice_exact, randomized_nice, sample_instance)

from .conftest import enumerate_max_nice


def complete_instance(m):
    return Instance(m, edges=[(u, v) for u in range(1, m + 1) for v in range(u + 1, m + 1)])


def test_exact_examples():
    inst = Instance(4, edges=[(1, 2)], conflicts={3: {4}})
    result = max_nice_exact(inst)
    assert result.size == 2 == enumerate_max_nice(inst)
    assert is_nice(result.vertices, inst)
    assert result.method == "exact"

    assert max_nice_exact(Instance(5)).size == 5
    assert max_nice_exact(complete_instance(4)).size == 1


def test_exact_matches_enumeration_on_seeded_instances():
    for idx in range(20):
        m = 6 + idx % 7
        p = [0.2, 0.5, 0.8][idx % 3]
        k = idx % 3
        spec = ConflictSpec.uniform(min(k, m - 1)) if k else ConflictSpec.none()
        inst = sample_instance(m, p, spec, seed=derive_seed(77, idx))
        assert max_nice_exact(inst).size == enumerate_max_nice(inst)


def test_exact_budget_error_carries_best_so_far():
    inst = sample_instance(30, 0.3, seed=5)
    with pytest.raises(BudgetError) as info:
        max_nice_exact(inst, node_budget=3)
    err = info.value
    assert err.best_size is not None and err.best_size >= 1
    assert is_nice(err.best_vertices, inst)
    with pytest.raises(ValueError):
        max_nice_exact(inst, node_budget=0)


def test_greedy_path_trace():
    # degrees 1,2,2,1: pick 1, drop 2; residual 3-4 has degrees 1,1, pick 3
    path = Instance(4, edges=[(1, 2), (2, 3), (3, 4)])
    assert greedy_nice(path).vertices == frozenset({1, 3})


def test_greedy_trivial_graphs():
    assert greedy_nice(Instance(6)).size == 6
    assert greedy_nice(complete_instance(6)).size == 1


def test_greedy_tie_break_validation_and_random_mode():
    inst = sample_instance(10, 0.4, seed=3)
    with pytest.raises(ValueError):
        greedy_nice(inst, tie_break="bogus")
    a = greedy_nice(inst, tie_break="random", seed=9)
    b = greedy_nice(inst, tie_break="random", seed=9)
    assert a == b
    assert is_nice(a.vertices, inst)
    assert a.seed == 9


@settings(max_examples=40, deadline=None)
@given(m=st.integers(1, 12), p=st.floats(0.0, 1.0), k=st.integers(0, 2),
       seed=st.integers(0, 2**16))
def test_greedy_output_is_nice_and_maximal(m, p, k, seed):
    spec = ConflictSpec.uniform(min(k, m - 1)) if k else ConflictSpec.none()
    inst = sample_instance(m, p, spec, seed=seed)
    result = greedy_nice(inst)
    assert is_nice(result.vertices, inst)
    for v in range(1, m + 1):
        if v not in result.vertices:
            assert not is_nice(result.vertices | {v}, inst)


def test_randomized_is_nice_and_deterministic():
    inst = sample_instance(12, 0.5, ConflictSpec.uniform(1), seed=21)
    a = randomized_nice(inst, seed=4)
    b = randomized_nice(inst, seed=4)
    assert a == b
    assert is_nice(a.vertices, inst)
    assert a.method == "randomized"
    assert a.size <= max_nice_exact(inst).size


def test_randomized_finds_everything_on_edgeless_graph():
    inst = Instance(5)
    result = randomized_nice(inst, max_restarts=300, seed=0)
    assert result.vertices == frozenset({1, 2, 3, 4, 5})
