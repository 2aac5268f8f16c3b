import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsum.dichotomy import ExponentMatrix, gadget_Hp
from expsum.oracle import (
    BudgetExceededError,
    CountVector,
    brute_counts,
    brute_partition,
    brute_partition_pinned,
    brute_value,
    edge_profile,
    evaluate_profile,
)
from expsum.polyring import Multigraph, SparsePoly, parse_poly

from conftest import direct_sum, random_quadratic

H = [[1, 1], [1, -1]]


def test_counts_examples():
    assert brute_counts(2, parse_poly("x1*x2", 2, 2)).counts == (3, 1)
    assert brute_counts(5, SparsePoly(2, 5)).counts == (25, 0, 0, 0, 0)
    assert brute_counts(3, parse_poly("x1", 3, 2)).counts == (3, 3, 3)
    assert brute_counts(7, parse_poly("4", 7, 0)).counts == (0, 0, 0, 0, 1, 0, 0)


def test_counts_budget():
    with pytest.raises(BudgetExceededError, match="7\\^3"):
        brute_counts(7, parse_poly("x1", 7, 3), budget=300)
    assert brute_counts(7, parse_poly("x1", 7, 3), budget=343).total == 343


def test_value_examples():
    assert brute_value(CountVector(2, (3, 1))) == 2
    assert brute_value(CountVector(3, (9, 0, 0))) == 9
    assert abs(brute_value(CountVector(6, (4,) * 6))) < 1e-12
    with pytest.raises(ValueError):
        brute_value(CountVector(2, (1, 1)), 3)


def test_big_modulus_evaluation_is_exact():
    # past the int64 limit the oracle evaluates on Python integers
    from expsum.oracle import _evaluate_chunk
    from expsum.polyring import eval_point

    N = 2**127 - 1
    f = SparsePoly(3, N, {(2, 1, 0): N - 2, (1, 0, 1): 12345678901234567890, (0, 0, 0): 3})
    rng = random.Random(0)
    points = [[rng.randrange(N) for _ in range(3)] for _ in range(20)]
    got = _evaluate_chunk(f, np.array(points, dtype=object))
    assert [int(v) for v in got] == [eval_point(f, x) for x in points]


@given(st.integers(1, 12), st.integers(0, 3), st.integers(0, 2**32))
def test_value_matches_point_by_point(N, n, seed):
    rng = random.Random(seed)
    terms = {tuple(rng.randrange(4) for _ in range(n)): rng.randrange(N) for _ in range(4)}
    f = SparsePoly(n, N, terms)
    assert abs(brute_value(brute_counts(N, f)) - direct_sum(N, f)) <= 1e-9 * max(1, N**n)


@given(st.integers(1, 9), st.integers(0, 3), st.integers(0, 2**32))
def test_counts_sum_to_N_power(N, n, seed):
    f = random_quadratic(random.Random(seed), N, n).to_sparse()
    assert brute_counts(N, f).total == N**n


def test_partition_examples():
    assert brute_partition(H, Multigraph.from_edge_list(2, [(1, 2)])) == 2
    assert brute_partition(np.eye(3), Multigraph(4)) == 81
    G = Multigraph(3, {(1, 2): 2, (2, 3): 1})
    assert brute_partition(np.ones((3, 3)), G) == 27
    with pytest.raises(BudgetExceededError):
        brute_partition(np.ones((3, 3)), G, budget=26)


def test_pinned_examples():
    G = Multigraph(3, {(1, 2): 1, (2, 3): 2})
    assert brute_partition_pinned(H, G, {}) == brute_partition(H, G)
    A = np.array([[2, 3], [3, 5]])
    assert brute_partition_pinned(A, G, {1: 0, 2: 1, 3: 1}) == 3 * 25
    with pytest.raises(ValueError):
        brute_partition_pinned(A, G, {1: 2})
    with pytest.raises(ValueError):
        brute_partition_pinned(A, G, {4: 0})


def test_pinned_gadget_diagonal():
    F3 = ExponentMatrix.from_rows(3, [[i * j % 3 for j in range(3)] for i in range(3)])
    G = gadget_Hp(1, 3).graph
    for i in range(3):
        assert abs(brute_partition_pinned(F3.to_complex(), G, {1: i, 2: i}) - 3 * 3**2) < 1e-9


def _symmetric_complex(rng, m):
    A = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return A + A.T


@given(st.integers(1, 3), st.integers(0, 2**32))
def test_pinning_consistency(m, seed):
    rng = np.random.default_rng(seed)
    A = _symmetric_complex(rng, m)
    G = Multigraph(4, {(1, 2): 1, (2, 3): 2, (3, 4): 1, (1, 4): 1})
    total = sum(brute_partition_pinned(A, G, {1: i, 3: j}) for i in range(m) for j in range(m))
    assert abs(total - brute_partition(A, G)) <= 1e-9 * max(1.0, abs(total))


@given(st.integers(1, 3), st.integers(0, 2**32))
def test_profile_reproduces_partition_function(m, seed):
    rng = np.random.default_rng(seed)
    edges = {}
    for u, v in itertools.combinations(range(1, 5), 2):
        if rng.random() < 0.5:
            edges[(u, v)] = int(rng.integers(1, 4))
    G = Multigraph(4, edges)
    profile = edge_profile(G, m)
    assert profile.weights.sum() == m**4
    for _ in range(3):
        A = _symmetric_complex(rng, m)
        z = brute_partition(A, G)
        assert abs(evaluate_profile(profile, A) - z) <= 1e-9 * max(1.0, abs(z))
    pinned = edge_profile(G, m, {1: 0})
    A = _symmetric_complex(rng, m)
    assert abs(evaluate_profile(pinned, A) - brute_partition_pinned(A, G, {1: 0})) <= 1e-9 * max(1.0, abs(brute_partition(A, G)))


def test_profile_rejects_asymmetric():
    profile = edge_profile(Multigraph.from_edge_list(2, [(1, 2)]), 2)
    with pytest.raises(ValueError):
        evaluate_profile(profile, [[1, 2], [3, 4]])
