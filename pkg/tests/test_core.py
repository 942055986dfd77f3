from itertools import combinations

import pytest

from ordinal_msp import (Minor, OrderedMatroid, ValueOrder, brute_force_opt, contract, greedy_opt, is_independent,
                         rank, restrict, span, verify_matroid_axioms)
from ordinal_msp.harness import partition_N, tpa_instance
from ordinal_msp.zoo import GraphicMatroid, PartitionMatroid, UniformMatroid


@pytest.fixture
def triangle():
    # e1 > e2 > e3 under the identity order
    return GraphicMatroid(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def n3():
    return partition_N(3)


def test_value_order_roundtrip():
    o = ValueOrder([2, 0, 1])
    assert o.element(1) == 2 and o.position(2) == 1
    assert o.prefix(2) == {2, 0}
    assert o.sort([0, 1, 2]) == [2, 0, 1]
    assert o.better(2, 1) and not o.better(1, 0)


def test_value_order_rejects_non_permutation():
    with pytest.raises(ValueError):
        ValueOrder([0, 0, 1])


def test_uniform_independence():
    U = UniformMatroid(4, 2)
    assert is_independent(U, {0, 1})
    assert not is_independent(U, {0, 1, 2})


def test_triangle_cycle_dependent(triangle):
    assert not is_independent(triangle, {0, 1, 2})


def test_is_independent_rejects_foreign_ids():
    with pytest.raises(ValueError):
        is_independent(UniformMatroid(3, 1), {5})


def test_greedy_opt_partition(n3):
    assert greedy_opt(n3) == {0, 3, 4}
    assert greedy_opt(n3, {1, 2}) == {1}


def test_greedy_opt_triangle(triangle):
    assert greedy_opt(triangle) == {0, 1}


def test_rank_and_span(triangle, n3):
    assert rank(triangle, {0, 1}) == 2
    assert span(triangle, {0, 1}) == {0, 1, 2}
    assert rank(n3, {3}) == 1
    assert span(n3, {3}) == {3}


def test_tpa_instance_rank():
    for rho in (2, 3):
        assert rank(tpa_instance(rho)) == rho


def test_restrict_behaves_as_smaller_uniform():
    R = restrict(UniformMatroid(4, 2), {0, 1})
    assert R.ground == {0, 1}
    assert R.indep({0, 1})
    assert not R.indep({0, 2})


def _contract_oracle(M, Q, I):
    return rank(M, set(I) | set(Q)) - rank(M, Q) == len(I)


def test_contract_matches_rank_formula(triangle):
    C = contract(triangle, {0})
    assert not C.indep({1, 2})
    for size in range(3):
        for I in combinations(sorted(C.ground), size):
            assert C.indep(I) == _contract_oracle(triangle, {0}, I)


def test_contract_empty_is_identity(triangle):
    C = contract(triangle, ())
    for size in range(4):
        for I in combinations(range(3), size):
            assert C.indep(I) == triangle.indep(I)


def test_minor_order_is_shared(triangle):
    with pytest.raises(TypeError):
        Minor(triangle).with_order([2, 1, 0])


def test_brute_force_opt(n3, triangle):
    assert len(brute_force_opt(n3, range(5), [1] * 5)) == 3
    best = brute_force_opt(triangle, range(3), [3, 2, 1])
    assert best == {0, 1}
    best = brute_force_opt(UniformMatroid(4, 2), range(4), [4, 3, 2, 1])
    assert best == {0, 1}


def test_brute_force_agrees_with_greedy_on_compatible_weights(triangle):
    w = [5.0, 4.5, 0.5]
    assert brute_force_opt(triangle, range(3), w) == greedy_opt(triangle)


def test_axioms_on_zoo_members(triangle, n3):
    assert verify_matroid_axioms(triangle)
    assert verify_matroid_axioms(n3)
    assert verify_matroid_axioms(PartitionMatroid([[0, 1], [2, 3]], [1, 2]))


def test_axioms_reject_non_matroid():
    family = {frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1}), frozenset({2, 3}),
              frozenset({2}), frozenset({3})}
    M = OrderedMatroid(4, oracle=lambda S: S in family)
    assert not verify_matroid_axioms(M)


def test_axioms_accept_free_matroid():
    assert verify_matroid_axioms(OrderedMatroid(5, oracle=lambda S: True))


def test_axioms_reject_non_downward_closed():
    M = OrderedMatroid(2, oracle=lambda S: len(S) != 1)
    assert not verify_matroid_axioms(M)


def test_with_order_keeps_independence(triangle):
    other = triangle.with_order([2, 1, 0])
    assert greedy_opt(other) == {2, 1}
    assert other.indep({0, 1}) and not other.indep({0, 1, 2})
