import itertools

import numpy as np
import pytest

from ordinal_msp import OrderedMatroid, greedy_opt
from ordinal_msp.engines import ArrivalTrial
from ordinal_msp.fixtures import load_fixtures
from ordinal_msp.harness import enumerate_choices
from ordinal_msp.layered import (BucketPlan, LayeredInstance, LayerEstimate, build_buckets, bucket_count,
                                 coupling_histograms, coupling_procedure, feldman_alpha, layer_competitiveness,
                                 ordinal_thresholds, plus_set, run_feldman_layered, run_ordinal_reduction,
                                 run_probability_reduction)
from ordinal_msp.zoo import UniformMatroid

SMALL = {fx.name: fx.instance for fx in load_fixtures("quick")}


def test_buckets_width_two_with_shift():
    assert bucket_count(3, 1, 1) == 2
    assert build_buckets(3, 1, 1) == [(0, 1), (2, 3)]


def test_buckets_unit_width_leave_first_layer_out():
    assert build_buckets(2, 0, 0) == [(1, 1), (2, 2)]


def test_buckets_without_thresholds():
    assert build_buckets(0, 0, 0) == [(1, 0)]


def test_buckets_cover_every_layer_when_shifted():
    for k in range(8):
        for tau in range(4):
            for delta in range(1, 1 << tau):
                layers = [j for lo, hi in build_buckets(k, tau, delta) for j in range(lo, hi + 1)]
                assert layers == list(range(k + 1))


def test_bucket_argument_checks():
    with pytest.raises(ValueError):
        build_buckets(3, 1, 2)


def test_feldman_alpha():
    assert [feldman_alpha(k) for k in (0, 1, 2, 3, 7)] == [8, 16, 24, 24, 32]


def test_plan_draw_ranges():
    rng = np.random.default_rng(0)
    seen = set()
    for _ in range(400):
        plan = BucketPlan.draw(3, rng)
        assert 0 <= plan.tau <= 2 and 0 <= plan.delta < (1 << plan.tau)
        seen.add((plan.tau, plan.delta, plan.parity))
    assert len(seen) == 2 * (1 + 2 + 4)


def test_layers_from_threshold_keys():
    U = UniformMatroid(6, 3)
    L = LayeredInstance(U, {0, 2, 3, 5}, (1, 4))
    assert L.layers() == [{0}, {2, 3}, {5}]
    with pytest.raises(ValueError):
        LayeredInstance(U, {0, 1}, (1,))


def test_full_sample_gives_empty_selection():
    U = UniformMatroid(5, 2)
    L = LayeredInstance(U, range(5), ())
    out = run_feldman_layered(L, range(5), [], np.random.default_rng(0))
    assert out.selected == frozenset()


def test_no_thresholds_selects_nothing():
    # the first layer sits in no bucket when there are no thresholds
    U = UniformMatroid(4, 2)
    L = LayeredInstance(U, range(4), ())
    for parity in (0, 1):
        plan = BucketPlan.make(0, 0, 0, parity)
        assert run_feldman_layered(L, {3}, [0, 1, 2], None, plan=plan).selected == frozenset()


def test_active_bucket_runs_greedy_on_its_minor():
    U = UniformMatroid(6, 2)
    L = LayeredInstance(U, {0, 2, 3, 4, 5}, (1,))
    inactive = BucketPlan.make(1, 0, 0, 0)
    assert run_feldman_layered(L, set(), [5, 4, 3, 2, 0], None, plan=inactive).selected == frozenset()
    single = BucketPlan.make(1, 0, 0, 1)
    assert run_feldman_layered(L, set(), [0, 5, 4, 3, 2], None, plan=single).selected == {5, 4}
    merged = BucketPlan.make(1, 1, 1, 1)
    assert run_feldman_layered(L, set(), [0, 5, 4, 3, 2], None, plan=merged).selected == {0, 5}


@pytest.mark.parametrize("name", ["graphic_5", "laminar_5", "framed_5", "uniform_5_2"])
def test_layered_output_always_independent(name):
    M = SMALL[name]
    ground = list(range(M.n))
    for thr in ([], [1], [0, 3]):
        keys = {M.order.key[c] for c in thr}
        G = [e for e in ground if M.order.key[e] not in keys]
        L = LayeredInstance(M, G, tuple(keys))
        for mask in range(1 << len(G)):
            F = {e for i, e in enumerate(G) if mask >> i & 1}
            rest = [e for e in G if e not in F]
            for arrival in itertools.permutations(rest):
                for tau in range(3):
                    for delta in range(1 << tau):
                        for parity in (0, 1):
                            plan = BucketPlan.make(L.k, tau, delta, parity)
                            out = run_feldman_layered(L, F, list(arrival), None, plan=plan)
                            assert M.indep(out.selected)
                            assert out.selected <= set(rest)


def test_layered_input_checks():
    U = UniformMatroid(4, 2)
    L = LayeredInstance(U, {0, 1, 2}, ())
    with pytest.raises(ValueError):
        run_feldman_layered(L, {3}, [0, 1, 2], np.random.default_rng(0))
    with pytest.raises(ValueError):
        run_feldman_layered(L, {0}, [1], np.random.default_rng(0))


def test_ordinal_thresholds_doubling_ranks():
    assert ordinal_thresholds(["a", "b", "c", "d", "e"]) == ["a", "b", "d"]
    assert ordinal_thresholds(["a"]) == ["a"]
    assert ordinal_thresholds([]) == []
    assert ordinal_thresholds(list(range(8))) == [0, 1, 3, 7]


def test_plus_set_of_empty_sample_is_non_loops():
    M = OrderedMatroid(4, oracle=lambda S: 2 not in S and len(S) <= 2)
    assert plus_set(M, ()) == {0, 1, 3}


def test_plus_set_free_matroid():
    M = OrderedMatroid(5, oracle=lambda S: True)
    assert plus_set(M, {1, 3}) == {0, 2, 4}


def test_plus_set_uniform():
    # r^3 is beaten by two sampled elements, r^4 only by r^2
    U = UniformMatroid(5, 2)
    assert plus_set(U, {1, 4}) == {0, 2, 3}


@pytest.mark.parametrize("name", ["graphic_5", "transversal_5", "laminar_5"])
@pytest.mark.parametrize("reduction", [run_ordinal_reduction, run_probability_reduction])
def test_reductions_always_independent(name, reduction):
    M = SMALL[name]

    def one(ch):
        order = [int(e) for e in ch.permutation(M.n)]
        s = ch.binomial(M.n, 0.5)
        return reduction(M, ArrivalTrial(order, s), ch).selected

    leaves = 0
    for prob, sel in enumerate_choices(one):
        leaves += 1
        assert M.indep(sel)
    assert leaves > 120


def test_reduction_records_thresholds():
    U = UniformMatroid(6, 3)
    out = run_ordinal_reduction(U, ArrivalTrial((4, 0, 2, 5, 1, 3), 3), np.random.default_rng(0))
    assert out.extra["thresholds"] == (0, 2)
    assert all(e not in (4, 0, 2) for e in out.selected)


def test_coupling_all_zero_coins():
    M = SMALL["graphic_5"]
    V, W = coupling_procedure(M, [0] * M.n)
    assert V == greedy_opt(M) and W == frozenset()


def test_coupling_all_one_coins():
    V, W = coupling_procedure(UniformMatroid(3, 1), [1, 1, 1])
    assert V == frozenset()
    assert W == {0, 1, 2}
    assert W == plus_set(UniformMatroid(3, 1), ())


def test_coupling_requires_one_coin_each():
    with pytest.raises(ValueError):
        coupling_procedure(UniformMatroid(3, 1), [0, 1])


def test_coupling_law_on_uniform():
    coupled, sampled = coupling_histograms(UniformMatroid(4, 2))
    assert coupled == sampled
    assert sum(coupled.values()) == 1


def test_layer_estimate_holds():
    assert LayerEstimate(0, 2, 0.13, 0.0).holds(16)
    assert not LayerEstimate(0, 2, 0.13, 0.0).holds(8)
    assert LayerEstimate(0, 2, 0.2, 0.02).holds(8)


def test_layer_competitiveness_shapes():
    U = UniformMatroid(10, 4)
    opt = sorted(greedy_opt(U), key=U.order.key.__getitem__)
    thr = tuple(U.order.key[c] for c in opt[1::2][:2])
    L = LayeredInstance(U, set(range(10)) - set(opt[1::2][:2]), thr)
    est = layer_competitiveness(L, 200, seed=1)
    assert [e.layer for e in est] == [0, 1, 2]
    assert sum(e.opt_count for e in est) == len(L.opt())
    assert all(e.mean >= 0 and e.se >= 0 for e in est)
